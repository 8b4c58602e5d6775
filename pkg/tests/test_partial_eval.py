import pytest

from conftest import F, T
from reflind.benchgen import builtin_theory
from reflind.errors import Stuck
from reflind.induction import InductionTemplate, datatype_of, induction_scheme_instance, instantiate, reflective_induction_axiom
from reflind.logic import App, Eq, Pred, Var, alpha_eq, normalize, substitute
from reflind.reflection import godel_encode, reflect_signature
from reflind.semantics.enumerate import enumerate_formulas
from reflind.semantics.model import eval_formula, finite_interpretation, reflective_model, truth_atom
from reflind.semantics.partial_eval import partial_eval

NADD = builtin_theory("N+Add")
NAT = NADD.signature.sort("nat")
RM = reflect_signature(NADD)


def pushed(rm, sort, t, phi):
    env = App(rm.push[sort], (App(rm.empty), App(rm.v0[sort]), t))
    return Pred(rm.models, (env, godel_encode(phi, rm)))


def test_truth_of_ground_atom():
    th = builtin_theory("E")
    rm = reflect_signature(th)
    assert partial_eval(truth_atom(rm, F("p(a)")), rm) == F("p(a)")


def test_formula2_instance():
    t = T("add(s(zero), zero)")
    x0 = Var(0, NAT)
    out = partial_eval(pushed(RM, NAT, t, Eq(NAT, x0, x0)), RM)
    assert out == Eq(NAT, t, t)


def test_formula2_under_binder_renames():
    # the bound x1 would capture nothing here, but the pushed x0 sits under it
    x0 = Var(0, NAT)
    phi = normalize(F("forall x1:nat. add(x0, x1) = x1", "N+Add"))
    t = T("s(zero)")
    out = partial_eval(pushed(RM, NAT, t, phi), RM)
    assert alpha_eq(out, normalize(substitute(phi, x0, t)))


def test_induction_axiom_expands_to_scheme():
    x0 = Var(0, NAT)
    phi = Eq(NAT, x0, x0)
    ax = reflective_induction_axiom(datatype_of(NADD, NAT), RM)
    out = partial_eval(instantiate(ax, godel_encode(phi, RM)), RM)
    want = induction_scheme_instance(InductionTemplate(datatype_of(NADD, NAT), x0, phi))
    assert alpha_eq(out, want)
    assert alpha_eq(normalize(out), normalize(want))


def test_lookup_in_empty_is_stuck():
    x0 = Var(0, NAT)
    code = godel_encode(Eq(NAT, x0, x0), RM)
    with pytest.raises(Stuck):
        partial_eval(Pred(RM.models, (App(RM.empty), code)), RM)


def test_soundness_on_finite_models():
    th = builtin_theory("E")
    rm = reflect_signature(th)
    alpha = th.signature.sort("alpha")
    models = [
        finite_interpretation(
            th.signature,
            {alpha: [0, 1]},
            {"a": {(): a}, "b": {(): 1 - a}, "c": {(): 0}},
            {"p": [(0,)], "q": [(a,)], "r": []},
        )
        for a in (0, 1)
    ]
    for phi in list(enumerate_formulas(th.signature, 1))[::7]:
        inp = truth_atom(rm, phi)
        out = partial_eval(inp, rm)
        for M in models:
            assert eval_formula(reflective_model(M, rm), inp) is eval_formula(M, out)
