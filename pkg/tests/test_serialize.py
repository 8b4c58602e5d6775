import re
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from conftest import requires_z3
from reflind import benchgen
from reflind.benchgen import CATALOG_COMBINATIONS, FRAGMENTS, builtin_theory
from reflind.errors import OpenAxiom, ParseError
from reflind.induction import reflective_inductive_extension
from reflind.logic import Signature, Top, alpha_eq
from reflind.reflection import reflective_extension
from reflind.serialize.common import as_problem
from reflind.serialize.names import NameTable
from reflind.serialize.smtlib import emit_smtlib, symbol
from reflind.serialize.surface import parse_document, parse_theory, print_theory
from reflind.serialize.tptp import atom, emit_tptp

GOLDEN = Path(__file__).parent / "golden"


def golden_cases():
    add0 = as_problem(builtin_theory("N+Add"), benchgen.refl1_base_conjecture("addGround-0")[1], "addGround-0")
    return {
        "N+L+Pref+App-ax0.native.smt2": lambda: emit_smtlib(benchgen.find_problem("N+L+Pref+App-ax0"), "native"),
        "addGround-0.direct.smt2": lambda: emit_smtlib(add0),
        "zeroMin.reflective.smt2": lambda: emit_smtlib(benchgen.find_problem("zeroMin", mode="reflective")),
        "eqRefl.p": lambda: emit_tptp(benchgen.find_problem("eqRefl")),
        "E.p": lambda: emit_tptp(builtin_theory("E")),
        "N+L+App+Rev.th": lambda: print_theory(builtin_theory("N+L+App+Rev")),
    }


@pytest.mark.parametrize("name", sorted(golden_cases()))
def test_golden(name):
    assert golden_cases()[name]() == (GOLDEN / name).read_text(encoding="utf-8")


def test_emission_stable_across_processes():
    code = (
        "import sys; sys.path.insert(0, %r); from test_serialize import golden_cases;"
        "sys.stdout.write(''.join(f() for _, f in sorted(golden_cases().items())))" % str(Path(__file__).parent)
    )
    outs = {
        subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env={"PYTHONHASHSEED": s}).stdout
        for s in ("1", "2", "3")
    }
    assert len(outs) == 1 and outs.pop()


# -- surface format --------------------------------------------------------------


@pytest.mark.parametrize("name", list(FRAGMENTS) + list(CATALOG_COMBINATIONS))
def test_roundtrip_builtin(name):
    th = builtin_theory(name)
    back = parse_theory(print_theory(th))
    assert back.signature == th.signature
    assert back.datatypes == th.datatypes
    assert back.axioms == th.axioms


@pytest.mark.parametrize("name", ["E", "N+Add", "N+L+App+Rev+Rev'"])
def test_roundtrip_reflective(name):
    for th in (reflective_extension(builtin_theory(name)), reflective_inductive_extension(builtin_theory(name))):
        text = print_theory(th)
        back = parse_theory(text)
        assert back == th
        assert print_theory(back) == text


@pytest.mark.parametrize("suite", ["refl0", "refl1", "ind"])
def test_roundtrip_suites(suite):
    from reflind.cli import problem_document

    modes = ["native", "reflective"] if suite == "ind" else [None]
    for mode in modes:
        for p in benchgen.gen_suite(suite, mode):
            doc = parse_document(problem_document(p))
            assert doc.theory == p.theory
            assert doc.conjecture == p.conjecture
            assert doc.meta["id"] == p.id


def test_parse_add_fragment():
    th = parse_theory("sort nat. data nat = zero | s(nat). fun add: nat nat -> nat. axiom forall y:nat. add(zero,y) = y.")
    assert [f.name for f in th.signature.funs] == ["zero", "s", "add"]
    assert alpha_eq(th.axioms[0], builtin_theory("Add").axioms[0])


def test_parse_empty_document():
    th = parse_theory("")
    assert th.signature == Signature() and th.axioms == ()


def test_parse_open_axiom():
    with pytest.raises(OpenAxiom):
        parse_theory("sort a. pred p: a. axiom p(x).")


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_theory("sort nat.\nfun f: nat -> .")
    assert "2:" in str(info.value)


def test_variable_names_regenerate():
    text = print_theory(parse_theory("sort nat. fun z: -> nat. axiom forall foo:nat, bar:nat. foo = bar."))
    assert "forall x0:nat, x1:nat. x0 = x1" in text


def test_reflective_print_uses_reserved_names():
    text = print_theory(reflective_extension(builtin_theory("N+Add")))
    for name in ("add'r", "eqdot_nat", "push_nat", "models", "botdot"):
        assert name in text


# -- emitters ----------------------------------------------------------------------


def _balanced(text):
    depth = 0
    quoted = False
    for ch in text:
        if ch == "|":
            quoted = not quoted
        elif not quoted and ch == "(":
            depth += 1
        elif not quoted and ch == ")":
            depth -= 1
            if depth < 0:
                return False
    return depth == 0 and not quoted


def test_smt_refl0_shape():
    text = emit_smtlib(benchgen.find_problem("N+L+Pref+App-ax0"), "native")
    assert "(set-logic UFDT)" in text
    decl = re.search(r"\(declare-datatypes \(([^)]*\)[^)]*\))\)", text)
    assert decl and decl.group(1).count("0)") == 2
    assert text.count("(assert (not ") == 1
    assert "(declare-sort form 0)" in text and "(declare-sort env 0)" in text
    assert "(set-info :source |N+L+Pref+App-ax0|)" in text


def test_smt_axiomatized_mode():
    p = benchgen.find_problem("zeroMin", mode="reflective")
    text = emit_smtlib(p)
    assert "declare-datatypes" not in text and "(set-logic UF)" in text
    assert "(declare-fun zero () nat)" in text
    native = emit_smtlib(p, "native")
    assert "declare-datatypes" in native


def test_smt_top_rendered():
    text = emit_smtlib(as_problem(builtin_theory("E"), Top(), "top"))
    assert "(assert (not true))" in text


def test_tptp_e_theory():
    lines = emit_tptp(builtin_theory("E")).splitlines()
    assert sum("$tType" in l for l in lines) == 1
    assert sum(l.startswith("tff(sym") for l in lines) == 6
    assert not any(", axiom," in l for l in lines)


def test_tptp_eq_refl_goal():
    text = emit_tptp(benchgen.find_problem("eqRefl"))
    goal = [l for l in text.splitlines() if ", conjecture," in l]
    assert goal == ["tff(goal, conjecture, models(empty, forall_alpha(v0_alpha, eqdot_alpha(inj_alpha(v0_alpha), inj_alpha(v0_alpha)))))."]
    assert "'add''r'" not in text


def test_tptp_numerals_nested():
    text = emit_tptp(benchgen.find_problem("addGround-1"))
    goal = [l for l in text.splitlines() if ", conjecture," in l][0]
    assert goal.count("'s\\'r'(") == 8 + 5 + 13
    assert not re.search(r"[(, ]\d+[), ]", goal)


def test_tptp_quotes_primes():
    assert atom("add'r") == "'add\\'r'"
    assert atom("zero") == "zero"
    assert atom("Zero") == "'Zero'"


def test_smt_symbol_rules():
    assert symbol("x0.nat") == "x0.nat"
    assert symbol("add'r") == "|add'r|"


@given(st.lists(st.text(alphabet="ab'_ |.Z09", min_size=1, max_size=5), min_size=1, max_size=12, unique=True))
def test_name_sanitizing_injective(names):
    for render, reserved in ((atom, {"tff"}), (lambda n: symbol(n.replace("|", "_")), {"and"})):
        table = NameTable(render, reserved)
        out = [table(("sym", n), n) for n in names]
        assert len(set(out)) == len(out)


def test_grammar_validation_of_all_suites():
    for suite, mode in (("refl0", None), ("refl1", None), ("ind", "native"), ("ind", "reflective")):
        for p in benchgen.gen_suite(suite, mode):
            assert _balanced(emit_smtlib(p))
            for line in emit_tptp(p).splitlines():
                assert line.startswith("%") or re.match(r"tff\(\w+, (type|axiom|conjecture), .*\)\.$", line), line


@requires_z3
def test_z3_accepts_emitted_files(tmp_path):
    for pid, mode in (("addGround-0", None), ("zeroMin", "native"), ("zeroMin", "reflective"), ("N+L+Pref+App-ax0", None)):
        p = benchgen.find_problem(pid, mode=mode)
        f = tmp_path / f"{pid}.smt2"
        f.write_text(emit_smtlib(p))
        out = subprocess.run(["z3", "-T:2", "-smt2", str(f)], capture_output=True, text=True).stdout
        assert "error" not in out, out
        assert out.strip().splitlines()[-1] in {"sat", "unsat", "unknown", "timeout"}
