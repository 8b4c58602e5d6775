import subprocess
import sys

import pytest

from conftest import requires_z3
from reflind import benchgen
from reflind.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, EXIT_USAGE, main
from reflind.serialize.surface import parse_document, parse_theory


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def decl_names(text):
    return {l.split()[1].rstrip(":") for l in text.splitlines() if l.startswith(("fun ", "pred "))}


def test_reflect_adds_sixteen_symbols(capsys):
    code, out, _ = run(capsys, "reflect", "builtin:N+Add")
    assert code == EXIT_OK
    plain = parse_theory(run(capsys, "reflect", "builtin:N+Add")[1])
    assert len(plain.signature.funs) + len(plain.signature.preds) - 3 == 16
    assert len(decl_names(out)) == 16 + 1  # add is the only base symbol declared by fun
    assert out.count("\naxiom ") == 2 + 11  # 5s + s(s-1) + f + p + 3 with s=1, f=3, p=0


def test_reflect_inductive(capsys):
    code, out, _ = run(capsys, "reflect", "--inductive", "builtin:N+Add")
    assert code == EXIT_OK
    base = run(capsys, "reflect", "builtin:N+Add")[1]
    extra = [l for l in out.splitlines() if l.startswith("axiom") and l not in base.splitlines()]
    assert len(extra) == 3
    assert any("forall x0_form:form." in l and "push_nat(empty, v0_nat, zero)" in l for l in extra)
    assert "axiom forall x0:nat. ~(zero = s(x0))." in extra
    assert "axiom forall x0:nat, x1:nat. (s(x0) = s(x1) -> x0 = x1)." in extra


def test_reflect_twice_is_an_error(capsys, tmp_path):
    f = tmp_path / "r.th"
    assert run(capsys, "reflect", "builtin:N+Add", "-o", str(f))[0] == EXIT_OK
    code, _, err = run(capsys, "reflect", str(f))
    assert code == EXIT_INPUT and "already" in err


def test_reflect_bad_file(capsys, tmp_path):
    f = tmp_path / "bad.th"
    f.write_text("sort nat.\nfun f: nat -> .\n")
    code, _, err = run(capsys, "reflect", str(f))
    assert code == EXIT_INPUT and "2:" in err
    assert run(capsys, "reflect", str(tmp_path / "missing.th"))[0] == EXIT_INPUT


def test_encode_eq_refl(capsys):
    code, out, _ = run(capsys, "encode", "builtin:E", "forall x:alpha. x = x")
    assert code == EXIT_OK
    assert out == "forall_alpha(v0_alpha, eqdot_alpha(inj_alpha(v0_alpha), inj_alpha(v0_alpha)))\n"


def test_encode_false(capsys):
    assert run(capsys, "encode", "builtin:E", "false")[1] == "botdot\n"


def test_encode_unknown_symbol(capsys):
    code, _, err = run(capsys, "encode", "builtin:E", "zz(a)")
    assert code == EXIT_INPUT and "zz" in err


def test_usage_errors(capsys):
    for argv in ([], ["bogus"], ["check", "--suite", "nope"], ["run", "--solvers", "x.json", "-j", "0"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == EXIT_USAGE
    capsys.readouterr()


def test_gen_bench_lists_ids(capsys):
    out = run(capsys, "gen-bench", "--suite", "refl0")[1]
    assert out.split() == [p.id for p in benchgen.gen_refl0()]
    assert len(run(capsys, "gen-bench", "--suite", "ind", "--mode", "reflective")[1].split()) == 23


def test_gen_bench_writes_files(capsys, tmp_path):
    assert run(capsys, "gen-bench", "--suite", "refl1", "--out", str(tmp_path))[0] == EXIT_OK
    files = sorted(tmp_path.glob("*.th"))
    assert len(files) == 20
    doc = parse_document((tmp_path / "eqRefl.th").read_text())
    assert doc.meta["id"] == "eqRefl" and doc.conjecture is not None


def test_gen_bench_mode_mismatch(capsys):
    assert run(capsys, "gen-bench", "--suite", "refl0", "--mode", "native")[0] == EXIT_INPUT


def test_emit_by_id_and_mode(capsys):
    out = run(capsys, "emit", "zeroMin", "--mode", "reflective")[1]
    assert "models" in out and "(check-sat)" in out
    native = run(capsys, "emit", "zeroMin", "--mode", "native")[1]
    assert "models" not in native


def test_emit_pipeline_files(capsys, tmp_path):
    bench = tmp_path / "bench"
    out = tmp_path / "out"
    run(capsys, "gen-bench", "--suite", "refl0", "--out", str(bench))
    assert run(capsys, "emit", str(bench), "--format", "tptp", "--out", str(out))[0] == EXIT_OK
    assert len(list(out.glob("*.p"))) == 11
    single = tmp_path / "one.smt2"
    assert run(capsys, "emit", "eqRefl", "--out", str(single))[0] == EXIT_OK
    assert single.read_text().startswith("(set-")


def test_emit_nothing(capsys):
    assert run(capsys, "emit")[0] == EXIT_INPUT
    assert run(capsys, "emit", "noSuchProblem")[0] == EXIT_INPUT


def test_emit_deterministic():
    cmd = [sys.executable, "-m", "reflind.cli", "emit", "--suite", "refl1", "--format", "tptp"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and a.count(", conjecture,") == 20


def test_check_theorem2_depth2(capsys):
    code, out, _ = run(capsys, "check", "--suite", "theorem2", "--depth", "2")
    assert code == EXIT_OK
    assert "184559 formulas checked" in out and "0 disagreements" in out
    assert out.rstrip().endswith("PASS")


def test_check_formula2_depth2(capsys):
    code, out, _ = run(capsys, "check", "--suite", "formula2", "--depth", "2")
    assert code == EXIT_OK and "0 failures" in out


def test_check_theorem3_depth2(capsys):
    code, out, _ = run(capsys, "check", "--suite", "theorem3", "--depth", "2")
    assert code == EXIT_OK and "1685 formulas checked" in out


def test_check_failure_exit_code(capsys, monkeypatch):
    from reflind.semantics import oracles

    monkeypatch.setattr(oracles, "theorem3", lambda *a, **k: oracles.CheckReport("theorem3", 1, 0, ["boom"]))
    code, out, _ = run(capsys, "check", "--suite", "theorem3", "--depth", "1")
    assert code == EXIT_CHECK and "FAIL" in out and "boom" in out


def fake_config(tmp_path, verdict="unsat"):
    script = tmp_path / "solver.py"
    script.write_text(f"print({verdict!r})\n")
    cfg = tmp_path / "solvers.json"
    cfg.write_text('{"solvers": [{"name": "fake", "command": "%s %s {file}", "timeout": 5}]}' % (sys.executable, script))
    return cfg


def test_run_with_fake_solver(capsys, tmp_path):
    cfg = fake_config(tmp_path)
    results = tmp_path / "results.csv"
    report = tmp_path / "report.md"
    code, _, err = run(capsys, "run", "--solvers", str(cfg), "--suite", "refl0", "-j", "4", "--results", str(results), "--report", str(report))
    assert code == EXIT_OK
    assert results.read_text().splitlines()[0] == "suite,problem,solver,mode,verdict,seconds"
    assert len(results.read_text().splitlines()) == 12
    assert report.read_text().splitlines()[-1] == "| **total** | 11 |"
    assert err.count("\tProved\t") == 11


def test_run_unknown_verdicts_still_exit_zero(capsys, tmp_path):
    cfg = fake_config(tmp_path, "what")
    code, out, _ = run(capsys, "run", "--solvers", str(cfg), "eqRefl", "eqTrans")
    assert code == EXIT_OK and out.splitlines()[-1] == "| **total** | 0 |"


def test_run_missing_binary(capsys, tmp_path):
    cfg = tmp_path / "s.json"
    cfg.write_text('{"solvers": [{"name": "nope", "command": "no-such-solver-xyz {file}"}]}')
    code, _, err = run(capsys, "run", "--solvers", str(cfg), "eqRefl")
    assert code == EXIT_INPUT and "not found" in err


def test_run_emitted_files(capsys, tmp_path):
    cfg = fake_config(tmp_path)
    out = tmp_path / "smt"
    run(capsys, "emit", "--suite", "refl0", "--out", str(out))
    code, md, _ = run(capsys, "run", "--solvers", str(cfg), str(out))
    assert code == EXIT_OK and md.splitlines()[-1] == "| **total** | 11 |"


@requires_z3
def test_run_z3_on_ground_problem(capsys, tmp_path):
    from pathlib import Path

    cfg = Path(__file__).parent.parent / "configs" / "solvers.json"
    code, md, _ = run(capsys, "run", "--solvers", str(cfg), "addGround-0", "--timeout", "10")
    assert code == EXIT_OK
    assert "| addGround-0 | ✓ |" in md
