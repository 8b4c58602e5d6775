"""Running external provers on emitted problems, and rendering the results.

Each run is one child process in its own session, killed as a group when
the wall-clock timeout expires or the suite is cancelled.  Verdicts come
from exact pattern matches on the solver output: nothing that fails to
match a success pattern is ever reported as proved.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import re
import shlex
import shutil
import signal
import subprocess
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import MissingBinary, ReflindError

log = logging.getLogger(__name__)

PROVED = "Proved"
COUNTERSAT = "CounterSat"
UNKNOWN = "Unknown"
TIMEOUT = "Timeout"
CRASH = "Crash"
VERDICTS = (PROVED, COUNTERSAT, UNKNOWN, TIMEOUT, CRASH)

DEFAULT_TIMEOUT = 10.0

FORMATS = ("smtlib", "tptp")
SUFFIX = {"smtlib": ".smt2", "tptp": ".p"}

DEFAULT_PATTERNS = {
    "smtlib": {"success": [r"^unsat\s*$"], "countersat": [r"^sat\s*$"]},
    "tptp": {
        "success": [r"SZS status (Theorem|Unsatisfiable|ContradictoryAxioms)\b"],
        "countersat": [r"SZS status (CounterSatisfiable|Satisfiable)\b"],
    },
}


@dataclass(frozen=True)
class SolverConfig:
    name: str
    command: str
    format: str = "smtlib"
    success: tuple[str, ...] = ()
    countersat: tuple[str, ...] = ()
    timeout: float = DEFAULT_TIMEOUT
    datatype_mode: str | None = None

    def __post_init__(self):
        if "{file}" not in self.command:
            raise ReflindError(f"solver {self.name}: command must contain {{file}}")
        if self.format not in FORMATS:
            raise ReflindError(f"solver {self.name}: format must be one of {FORMATS}")
        if not self.timeout > 0:
            raise ReflindError(f"solver {self.name}: timeout must be positive")
        if not self.success:
            object.__setattr__(self, "success", tuple(DEFAULT_PATTERNS[self.format]["success"]))
        if not self.countersat:
            object.__setattr__(self, "countersat", tuple(DEFAULT_PATTERNS[self.format]["countersat"]))

    def argv(self, file: str | os.PathLike) -> list[str]:
        return [a.replace("{file}", str(file)) for a in shlex.split(self.command)]

    @classmethod
    def from_dict(cls, d: dict) -> "SolverConfig":
        return cls(
            name=d["name"],
            command=d["command"],
            format=d.get("format", "smtlib"),
            success=tuple(d.get("success", ())),
            countersat=tuple(d.get("countersat", ())),
            timeout=float(d.get("timeout", DEFAULT_TIMEOUT)),
            datatype_mode=d.get("datatype_mode"),
        )


def load_configs(path: str | os.PathLike) -> list[SolverConfig]:
    """Read ``{"solvers": [...]}`` (or a bare list) from a JSON file."""
    data = json.loads(Path(path).read_text())
    items = data["solvers"] if isinstance(data, dict) else data
    return [SolverConfig.from_dict(d) for d in items]


@dataclass(frozen=True)
class RunResult:
    problem: str
    solver: str
    verdict: str
    seconds: float
    digest: str = ""
    suite: str = ""
    mode: str = ""
    returncode: int | None = None
    output: str = field(default="", compare=False, repr=False)


def resolve_binary(config: SolverConfig) -> str:
    argv = config.argv("x")
    exe = argv[0] if argv else ""
    found = shutil.which(exe)
    if not found:
        raise MissingBinary(f"solver {config.name}: {exe!r} not found")
    return found


def classify(config: SolverConfig, output: str, returncode: int | None) -> str:
    if any(re.search(p, output, re.MULTILINE) for p in config.success):
        return PROVED
    if any(re.search(p, output, re.MULTILINE) for p in config.countersat):
        return COUNTERSAT
    if returncode not in (0, None):
        return CRASH
    return UNKNOWN


def _kill(proc: subprocess.Popen) -> None:
    try:
        os.killpg(proc.pid, signal.SIGKILL)
    except ProcessLookupError:
        pass


def run_solver(
    config: SolverConfig,
    file: str | os.PathLike,
    problem: str | None = None,
    cancel: threading.Event | None = None,
    poll: float = 0.05,
) -> RunResult:
    """Run one solver on one file under the configured wall-clock timeout."""
    if not Path(file).exists():
        raise FileNotFoundError(file)
    resolve_binary(config)
    pid = problem or Path(file).stem
    start = time.monotonic()
    proc = subprocess.Popen(
        config.argv(file),
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        stdin=subprocess.DEVNULL,
        start_new_session=True,
    )
    deadline = start + config.timeout
    timed_out = False
    out = b""
    try:
        while True:
            left = deadline - time.monotonic()
            if left <= 0 or (cancel is not None and cancel.is_set()):
                timed_out = left <= 0
                _kill(proc)
                out, _ = proc.communicate()
                break
            try:
                out, _ = proc.communicate(timeout=min(poll, left))
                break
            except subprocess.TimeoutExpired:
                continue
    finally:
        if proc.poll() is None:
            _kill(proc)
            proc.wait()
        # a solver may leave helpers in its group behind
        _kill(proc)
    seconds = time.monotonic() - start
    text = out.decode("utf-8", "replace")
    digest = hashlib.sha256(out).hexdigest()[:16]
    if timed_out:
        verdict = TIMEOUT
    else:
        verdict = classify(config, text, proc.returncode)
    return RunResult(pid, config.name, verdict, seconds, digest, returncode=proc.returncode, output=text)


# -- suites --------------------------------------------------------------------

CSV_COLUMNS = ("suite", "problem", "solver", "mode", "verdict", "seconds")


def _row(r: RunResult) -> list[str]:
    return [r.suite, r.problem, r.solver, r.mode, r.verdict, f"{r.seconds:.3f}"]


def emit_problem(problem, config: SolverConfig) -> str:
    from .serialize.smtlib import emit_smtlib
    from .serialize.tptp import emit_tptp

    if config.format == "smtlib":
        return emit_smtlib(problem, config.datatype_mode)
    return emit_tptp(problem)


def write_problem_files(problems, configs: Sequence[SolverConfig], workdir: str | os.PathLike) -> dict:
    """Emit each problem once per format; returns ``{(problem id, mode, solver): path}``."""
    root = Path(workdir)
    root.mkdir(parents=True, exist_ok=True)
    out = {}
    for p in problems:
        for c in configs:
            tag = c.datatype_mode or "default"
            path = root / p.mode / f"{_safe(p.id)}.{tag}{SUFFIX[c.format]}"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(emit_problem(p, c))
            out[(p.id, p.mode, c.name)] = path
    return out


def _safe(pid: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.+-]", lambda m: f"%{ord(m.group()):02X}", pid)


def _jobs(problems, configs, workdir) -> list[tuple[str, str, str, SolverConfig, Path]]:
    """``(id, suite, mode, config, file)`` per run.

    Problem instances are emitted once per format; ready-made ``.smt2`` and
    ``.p`` files are run by the solvers that read their format.
    """
    by_suffix = {v: k for k, v in SUFFIX.items()}
    insts = [p for p in problems if not isinstance(p, (str, os.PathLike))]
    files = write_problem_files(insts, configs, workdir) if insts else {}
    out = []
    for p in problems:
        if isinstance(p, (str, os.PathLike)):
            path = Path(p)
            fmt = by_suffix.get(path.suffix)
            for c in configs:
                if c.format == fmt:
                    out.append((path.stem, "", "", c, path))
        else:
            for c in configs:
                out.append((p.id, p.suite, p.mode, c, files[(p.id, p.mode, c.name)]))
    return out


def run_suite(
    configs: Sequence[SolverConfig],
    problems: Iterable,
    parallelism: int = 1,
    workdir: str | os.PathLike | None = None,
    results_path: str | os.PathLike | None = None,
    cancel: threading.Event | None = None,
    on_result: Callable[[RunResult], None] | None = None,
) -> list[RunResult]:
    """Run every solver on every problem once.

    ``problems`` holds :class:`ProblemInstance` values or paths of emitted
    files.  Completed results are appended to ``results_path`` (CSV) as they
    arrive, so an interrupted suite keeps everything that finished.  A run
    that raises is recorded as ``Crash``; the suite never aborts on one
    failure.  A solver binary that cannot be found raises
    :class:`MissingBinary` before anything is spawned.  Runs cut short by ``cancel`` are dropped.  The returned list
    follows problem order, then solver order.
    """
    import tempfile

    if parallelism < 1:
        raise ValueError("parallelism must be at least 1")
    problems = list(problems)
    for c in configs:
        resolve_binary(c)
    cancel = cancel or threading.Event()
    tmp = None
    if workdir is None:
        tmp = tempfile.TemporaryDirectory(prefix="reflind-")
        workdir = tmp.name
    try:
        jobs = _jobs(problems, configs, workdir)
        sink = None
        writer = None
        if results_path is not None:
            new = not Path(results_path).exists() or Path(results_path).stat().st_size == 0
            sink = open(results_path, "a", newline="")
            writer = csv.writer(sink, lineterminator="\n")
            if new:
                writer.writerow(CSV_COLUMNS)
                sink.flush()
        done: dict[int, RunResult] = {}

        def one(job) -> RunResult | None:
            pid, suite, mode, c, path = job
            if cancel.is_set():
                return None
            try:
                r = run_solver(c, path, pid, cancel)
            except Exception as exc:  # recorded, never fatal to the suite
                log.warning("run %s/%s failed: %s", c.name, pid, exc)
                r = RunResult(pid, c.name, CRASH, 0.0, "", output=str(exc))
            if cancel.is_set() and r.verdict != PROVED and r.verdict != COUNTERSAT:
                return None
            return RunResult(r.problem, r.solver, r.verdict, r.seconds, r.digest, suite, mode, r.returncode, r.output)

        try:
            with ThreadPoolExecutor(max_workers=parallelism) as pool:
                futs = {pool.submit(one, j): k for k, j in enumerate(jobs)}
                try:
                    for fut in as_completed(futs):
                        r = fut.result()
                        if r is None:
                            continue
                        done[futs[fut]] = r
                        if writer is not None:
                            writer.writerow(_row(r))
                            sink.flush()
                        if on_result is not None:
                            on_result(r)
                except BaseException:
                    cancel.set()
                    for f in futs:
                        f.cancel()
                    raise
        finally:
            if sink is not None:
                sink.close()
        return [done[k] for k in sorted(done)]
    finally:
        if tmp is not None:
            tmp.cleanup()


# -- reports -------------------------------------------------------------------


def results_csv(results: Iterable[RunResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        w.writerow(_row(r))
    return buf.getvalue()


def read_results(path: str | os.PathLike) -> list[RunResult]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [
        RunResult(r["problem"], r["solver"], r["verdict"], float(r["seconds"]), "", r["suite"], r["mode"])
        for r in rows
    ]


def markdown_table(results: Sequence[RunResult]) -> str:
    """Problems as rows, (mode, solver) column groups, a totals row."""
    modes: list[str] = []
    solvers: list[str] = []
    problems: list[str] = []
    cell: dict = {}
    for r in results:
        if r.mode not in modes:
            modes.append(r.mode)
        if r.solver not in solvers:
            solvers.append(r.solver)
        if r.problem not in problems:
            problems.append(r.problem)
        cell[(r.problem, r.mode, r.solver)] = r.verdict
    cols = [(m, s) for m in modes for s in solvers if any(k[1:] == (m, s) for k in cell)]
    label = (lambda m, s: f"{s} ({m})") if len(modes) > 1 else (lambda m, s: s)
    head = "| problem | " + " | ".join(label(m, s) for m, s in cols) + " |" if cols else "| problem |"
    sep = "|---|" + "".join(":-:|" for _ in cols)
    lines = [head, sep]
    if not results:
        return "\n".join(lines) + "\n"
    totals = [0] * len(cols)
    for p in problems:
        cells = []
        for i, (m, s) in enumerate(cols):
            v = cell.get((p, m, s))
            if v == PROVED:
                totals[i] += 1
            cells.append("✓" if v == PROVED else ("" if v is None else "–"))
        lines.append(f"| {p} | " + " | ".join(cells) + " |")
    lines.append("| **total** | " + " | ".join(str(t) for t in totals) + " |")
    return "\n".join(lines) + "\n"


def render_report(results: Sequence[RunResult]) -> tuple[str, str]:
    """The ``results.csv`` text and the ``report.md`` table for ``results``."""
    return results_csv(results), markdown_table(results)


__all__ = [
    "SolverConfig",
    "RunResult",
    "VERDICTS",
    "PROVED",
    "COUNTERSAT",
    "UNKNOWN",
    "TIMEOUT",
    "CRASH",
    "load_configs",
    "classify",
    "run_solver",
    "run_suite",
    "write_problem_files",
    "render_report",
    "results_csv",
    "read_results",
    "markdown_table",
]
