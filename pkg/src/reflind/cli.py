"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input error, 3 check failure.
Theory arguments are surface-syntax files or ``builtin:NAME`` for a catalog
combination such as ``builtin:N+Add``.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import benchgen
from .errors import ReflindError
from .logic import normalize

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CHECK = 0, 1, 2, 3

THEORY_SUFFIX = ".th"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class InputError(ReflindError):
    pass


def _read_doc(src: str):
    from .serialize.surface import TheoryDocument, parse_document

    if src.startswith("builtin:"):
        name = src[len("builtin:") :]
        return TheoryDocument(benchgen.builtin_theory(name), None, {"name": name})
    path = Path(src)
    if not path.exists():
        raise InputError(f"{src}: no such file")
    try:
        return parse_document(path.read_text(encoding="utf-8"))
    except ReflindError as exc:
        raise InputError(f"{src}:{exc}") from exc


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")


# -- subcommands ---------------------------------------------------------------


def cmd_reflect(args) -> int:
    from .induction import reflective_inductive_extension
    from .reflection import reflective_extension
    from .serialize.surface import print_document

    doc = _read_doc(args.theory)
    th = reflective_inductive_extension(doc.theory) if args.inductive else reflective_extension(doc.theory)
    meta = dict(doc.meta)
    meta.pop("reflection", None)
    _write(print_document(th, doc.conjecture, meta), args.output)
    return EXIT_OK


def cmd_encode(args) -> int:
    from .reflection import godel_encode, reflect_signature
    from .serialize.surface import parse_formula, print_term

    doc = _read_doc(args.theory)
    sig = doc.theory.signature
    phi = parse_formula(args.formula, sig)
    code = godel_encode(normalize(phi), reflect_signature(doc.theory))
    print(print_term(code))
    return EXIT_OK


def _suite_problems(suite: str, mode: str | None):
    if suite == "ind":
        return benchgen.gen_ind(mode or benchgen.NATIVE)
    if mode not in (None, benchgen.REFLECTIVE):
        raise InputError(f"suite {suite} has only the reflective mode")
    return benchgen.gen_suite(suite)


def problem_document(p) -> str:
    from .serialize.surface import print_document

    meta = {"name": p.theory.name, **p.meta}
    return print_document(p.theory, p.conjecture, meta)


def cmd_gen_bench(args) -> int:
    problems = _suite_problems(args.suite, args.mode)
    if args.out is None:
        for p in problems:
            print(p.id)
        return EXIT_OK
    root = Path(args.out)
    root.mkdir(parents=True, exist_ok=True)
    for p in problems:
        (root / f"{p.id}{THEORY_SUFFIX}").write_text(problem_document(p), encoding="utf-8")
    print(f"wrote {len(problems)} problems to {root}", file=sys.stderr)
    return EXIT_OK


def load_problem(src: str, mode: str | None = None):
    """A problem from a generated ``.th`` file, or a catalog id such as ``zeroMin``."""
    from .serialize.surface import parse_document

    path = Path(src)
    if path.exists():
        doc = parse_document(path.read_text(encoding="utf-8"))
        m = doc.meta
        return benchgen.ProblemInstance(
            m.get("id", path.stem),
            m.get("suite", ""),
            doc.theory,
            doc.conjecture,
            m.get("mode", benchgen.DIRECT),
            m.get("role", ""),
            m.get("base", doc.theory.name),
        )
    try:
        return benchgen.find_problem(src, mode=mode)
    except KeyError:
        raise InputError(f"{src}: neither a file nor a known problem id") from None


def _expand(paths) -> list[str]:
    out = []
    for s in paths:
        p = Path(s)
        if p.is_dir():
            out += sorted(str(q) for q in p.iterdir() if q.suffix in (THEORY_SUFFIX, ".smt2", ".p"))
        else:
            out.append(s)
    return out


def cmd_emit(args) -> int:
    from .serialize.smtlib import emit_smtlib
    from .serialize.tptp import emit_tptp

    sources = _expand(args.problems)
    if args.suite:
        problems = _suite_problems(args.suite, args.mode)
    else:
        problems = [load_problem(s, args.mode) if not s.startswith("builtin:") else _theory_problem(s) for s in sources]
    if not problems:
        raise InputError("nothing to emit")
    suffix = ".smt2" if args.format == "smtlib" else ".p"

    def render(p) -> str:
        if args.format == "smtlib":
            return emit_smtlib(p, args.datatype_mode)
        return emit_tptp(p)

    if args.out is None:
        for p in problems:
            sys.stdout.write(render(p))
        return EXIT_OK
    root = Path(args.out)
    if len(problems) == 1 and root.suffix == suffix:
        _write(render(problems[0]), str(root))
        return EXIT_OK
    root.mkdir(parents=True, exist_ok=True)
    for p in problems:
        (root / f"{p.id}{suffix}").write_text(render(p), encoding="utf-8")
    print(f"wrote {len(problems)} files to {root}", file=sys.stderr)
    return EXIT_OK


def _theory_problem(src: str):
    from .serialize.common import as_problem

    doc = _read_doc(src)
    return as_problem(doc.theory, doc.conjecture, doc.meta.get("id"))


def cmd_run(args) -> int:
    from .runner import SolverConfig, load_configs, render_report, run_suite

    configs = load_configs(args.solvers)
    if args.timeout is not None:
        configs = [SolverConfig(**{**c.__dict__, "timeout": args.timeout}) for c in configs]
    if args.only:
        configs = [c for c in configs if c.name in set(args.only)]
        if not configs:
            raise InputError("no solver left after --only")
    if args.suite:
        problems = list(_suite_problems(args.suite, args.mode))
    else:
        problems = []
        for s in _expand(args.problems):
            problems.append(Path(s) if s.endswith((".smt2", ".p")) else load_problem(s, args.mode))
    if not problems:
        raise InputError("no problems to run")
    if args.results and Path(args.results).exists() and not args.append:
        Path(args.results).unlink()

    def progress(r):
        print(f"{r.solver}\t{r.problem}\t{r.verdict}\t{r.seconds:.2f}", file=sys.stderr)

    results = run_suite(configs, problems, args.jobs, args.workdir, args.results, on_result=progress)
    csv_text, md = render_report(results)
    if args.report:
        _write(md, args.report)
    else:
        sys.stdout.write(md)
    return EXIT_OK


def cmd_check(args) -> int:
    from .semantics import oracles

    depth = args.depth
    if args.suite == "theorem1":
        kw = {"size": args.size, "depth": depth}
        if args.theory:
            kw["theories"] = args.theory
        rep = oracles.theorem1(**kw)
    elif args.suite == "theorem2":
        rep = oracles.theorem2(args.theory[0] if args.theory else "E", depth, args.size, seed=args.seed)
    elif args.suite == "formula2":
        rep = oracles.formula2(args.theory[0] if args.theory else "N+Add", depth, min(depth, 2))
    else:
        rep = oracles.theorem3(args.theory[0] if args.theory else "N+Add", depth)
    print(rep.summary())
    for f in rep.failures:
        print(f"  {f}")
    print("PASS" if rep.ok else "FAIL")
    return EXIT_OK if rep.ok else EXIT_CHECK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="reflind", description="Reflective extensions of first-order theories.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reflect", help="print the reflective (inductive) extension of a theory")
    p.add_argument("theory")
    p.add_argument("--inductive", action="store_true", help="add induction and constructor axioms")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("encode", help="print the Gödel code of a formula")
    p.add_argument("theory")
    p.add_argument("formula")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("gen-bench", help="list or write a benchmark suite")
    p.add_argument("--suite", required=True, choices=benchgen.SUITES)
    p.add_argument("--mode", choices=(benchgen.NATIVE, benchgen.REFLECTIVE))
    p.add_argument("--out", help="directory for one theory file per problem")
    p.set_defaults(func=cmd_gen_bench)

    p = sub.add_parser("emit", help="render problems as SMT-LIB or TPTP")
    p.add_argument("problems", nargs="*", help="theory files, directories, problem ids or builtin:NAME")
    p.add_argument("--suite", choices=benchgen.SUITES)
    p.add_argument("--mode", choices=(benchgen.NATIVE, benchgen.REFLECTIVE))
    p.add_argument("--format", choices=("smtlib", "tptp"), default="smtlib")
    p.add_argument("--datatype-mode", choices=("native", "axiomatized"))
    p.add_argument("--out", help="output file or directory")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("run", help="run solvers and print a report")
    p.add_argument("problems", nargs="*", help="theory files, emitted files or directories")
    p.add_argument("--solvers", required=True, help="JSON solver configuration")
    p.add_argument("--suite", choices=benchgen.SUITES)
    p.add_argument("--mode", choices=(benchgen.NATIVE, benchgen.REFLECTIVE))
    p.add_argument("--only", action="append", help="run only the named solver (repeatable)")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("--timeout", type=float)
    p.add_argument("--workdir")
    p.add_argument("--results", help="CSV written incrementally")
    p.add_argument("--append", action="store_true", help="append to an existing results file")
    p.add_argument("--report", help="markdown report path")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("check", help="run a metatheorem oracle")
    p.add_argument("--suite", required=True, choices=("theorem1", "theorem2", "formula2", "theorem3"))
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--size", type=int, default=2, choices=(1, 2, 3), help="carrier size of finite models")
    p.add_argument("--theory", action="append", help="catalog theory (repeatable for theorem1)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except (ReflindError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"reflind: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
