import pytest

from conftest import F
from reflind.benchgen import builtin_theory
from reflind.induction import (
    InductionTemplate,
    ctor_axioms,
    datatype_of,
    disjointness_axioms,
    induction_scheme_instance,
    injectivity_axioms,
    instantiate,
    reflective_induction_axiom,
    reflective_inductive_extension,
)
from reflind.logic import (
    And,
    App,
    Forall,
    FunSym,
    Implies,
    InductiveDatatype,
    Pred,
    Signature,
    Sort,
    Theory,
    Var,
    alpha_eq,
    eq,
    free_vars,
    is_closed,
    typecheck,
)
from reflind.reflection import godel_encode, reflect_signature, reflective_extension
from reflind.errors import SortMismatch

NL = builtin_theory("N+L+App")
NAT = NL.signature.sort("nat")
LST = NL.signature.sort("lst")
ZERO, S = NL.signature.fun("zero"), NL.signature.fun("s")
NIL, CONS = NL.signature.fun("nil"), NL.signature.fun("cons")

COLOR = Sort("color")
RED, GREEN = FunSym("red", (), COLOR), FunSym("green", (), COLOR)
D_COLOR = InductiveDatatype(COLOR, (RED, GREEN))
COLORS = Theory("C", Signature((COLOR,), (RED, GREEN)), (D_COLOR,))


def app(f, *a):
    return App(f, tuple(a))


def test_scheme_nat():
    x = Var(0, NAT)
    phi = F("add(x0, zero) = x0", "N+Add")
    got = induction_scheme_instance(InductionTemplate(datatype_of(NL, NAT), x, phi))
    n = Var(7, NAT)
    at = lambda t: eq(app(builtin_theory("N+Add").signature.fun("add"), t, app(ZERO)), t)
    want = Implies(And(at(app(ZERO)), Forall(n, Implies(at(n), at(app(S, n))))), Forall(n, at(n)))
    assert alpha_eq(got, want)


def test_scheme_list_drops_top_guard():
    l = Var(0, LST)
    phi = eq(l, l)
    got = induction_scheme_instance(InductionTemplate(datatype_of(NL, LST), l, phi))
    x, xs = Var(3, NAT), Var(4, LST)
    at = lambda t: eq(t, t)
    case_cons = Forall(x, Forall(xs, Implies(at(xs), at(app(CONS, x, xs)))))
    want = Implies(And(at(app(NIL)), case_cons), Forall(xs, at(xs)))
    assert alpha_eq(got, want)


def test_scheme_enum_has_no_hypotheses():
    x = Var(0, COLOR)
    got = induction_scheme_instance(InductionTemplate(D_COLOR, x, eq(x, app(RED))))
    want = Implies(And(eq(app(RED), app(RED)), eq(app(GREEN), app(RED))), Forall(x, eq(x, app(RED))))
    assert alpha_eq(got, want)


def test_scheme_capture_avoidance():
    # the body mentions x1 free; case variables must not capture it
    x0, x1 = Var(0, NAT), Var(1, NAT)
    got = induction_scheme_instance(InductionTemplate(datatype_of(NL, NAT), x0, eq(x0, x1)))
    assert free_vars(got) == {x1}


def test_template_sort_check():
    with pytest.raises(SortMismatch):
        induction_scheme_instance(InductionTemplate(datatype_of(NL, NAT), Var(0, LST), eq(Var(0, LST), Var(0, LST))))


def true_at(rm, sort, phi, t):
    return Pred(rm.models, (app(rm.push[sort], app(rm.empty), app(rm.v0[sort]), t), phi))


def test_reflective_axiom_nat():
    rm = reflect_signature(NL)
    f, n = Var(0, rm.form), Var(0, NAT)
    tr = lambda t: true_at(rm, NAT, f, t)
    want = Forall(f, Implies(And(tr(app(ZERO)), Forall(n, Implies(tr(n), tr(app(S, n))))), Forall(n, tr(n))))
    assert reflective_induction_axiom(datatype_of(NL, NAT), rm) == want


def test_reflective_axiom_list():
    rm = reflect_signature(NL)
    f, x, xs = Var(0, rm.form), Var(0, NAT), Var(0, LST)
    tr = lambda t: true_at(rm, LST, f, t)
    case = Forall(x, Forall(xs, Implies(tr(xs), tr(app(CONS, x, xs)))))
    want = Forall(f, Implies(And(tr(app(NIL)), case), Forall(xs, tr(xs))))
    assert alpha_eq(reflective_induction_axiom(datatype_of(NL, LST), rm), want)


def test_reflective_axiom_enum():
    rm = reflect_signature(COLORS)
    f, x = Var(0, rm.form), Var(0, COLOR)
    tr = lambda t: true_at(rm, COLOR, f, t)
    want = Forall(f, Implies(And(tr(app(RED)), tr(app(GREEN))), Forall(x, tr(x))))
    got = reflective_induction_axiom(D_COLOR, rm)
    assert alpha_eq(got, want)
    assert "->" not in repr(got.body.left) and "Implies" not in repr(got.body.left)


def test_instantiate_replaces_form_binder():
    rm = reflect_signature(NL)
    ax = reflective_induction_axiom(datatype_of(NL, NAT), rm)
    code = godel_encode(F("x0 = x0", "N"), rm)
    inst = instantiate(ax, code)
    assert is_closed(inst)
    assert not isinstance(inst, Forall) or inst.var.sort.kind != "form"
    found = []

    def walk(t):
        if isinstance(t, App):
            found.append(t)
            for a in t.args:
                walk(a)

    from reflind.logic import atoms_terms

    for t in atoms_terms(inst):
        walk(t)
    assert code in found


def test_ctor_axioms_nat():
    x, y = Var(0, NAT), Var(1, NAT)
    from reflind.logic import Not

    want = [
        Forall(x, Not(eq(app(ZERO), app(S, x)))),
        Forall(x, Forall(y, Implies(eq(app(S, x), app(S, y)), eq(x, y)))),
    ]
    got = ctor_axioms(datatype_of(NL, NAT))
    assert len(got) == 2
    assert all(any(alpha_eq(g, w) for g in got) for w in want)


def test_ctor_axioms_list():
    d = datatype_of(NL, LST)
    assert len(disjointness_axioms(d)) == 1
    inj = injectivity_axioms(d)
    assert len(inj) == 1
    body = inj[0]
    while isinstance(body, Forall):
        body = body.body
    assert isinstance(body.right, And)


def test_ctor_axioms_single_nullary():
    unit = Sort("unit")
    tt = FunSym("tt", (), unit)
    assert ctor_axioms(InductiveDatatype(unit, (tt,))) == []


def _syntactic(phi, env):
    # quantifier-free evaluation with equality read as syntactic identity
    from reflind.logic import Eq, Not, Or, subst_term

    if isinstance(phi, Eq):
        return subst_term(phi.lhs, env) == subst_term(phi.rhs, env)
    if isinstance(phi, Not):
        return not _syntactic(phi.arg, env)
    if isinstance(phi, Or):
        return _syntactic(phi.left, env) or _syntactic(phi.right, env)
    if isinstance(phi, And):
        return _syntactic(phi.left, env) and _syntactic(phi.right, env)
    if isinstance(phi, Implies):
        return not _syntactic(phi.left, env) or _syntactic(phi.right, env)
    raise AssertionError(phi)


def _holds(phi, pools, env=None):
    env = dict(env or {})
    if isinstance(phi, Forall):
        return all(_holds(phi.body, pools, {**env, phi.var: t}) for t in pools[phi.var.sort])
    return _syntactic(phi, env)


@pytest.mark.parametrize("sort", [NAT, LST])
def test_ctor_axioms_hold_in_term_model(sort):
    from reflind.semantics.enumerate import ground_terms

    depth = {NAT: 4, LST: 2}[sort]
    pools = {NAT: ground_terms(NL.signature, NAT, depth), LST: ground_terms(NL.signature, LST, 2)}
    for ax in ctor_axioms(datatype_of(NL, sort)):
        assert _holds(ax, pools)


def test_inductive_extension_counts():
    th = builtin_theory("N+Add")
    ext = reflective_inductive_extension(th)
    base = reflective_extension(th)
    assert len(ext.axioms) == len(base.axioms) + 1 + 2
    typecheck(ext)


def test_inductive_extension_two_datatypes():
    ext = reflective_inductive_extension(NL)
    base = reflective_extension(NL)
    extra = ext.axioms[len(base.axioms):]
    forms = [a for a in extra if isinstance(a, Forall) and a.var.sort.kind == "form"]
    assert len(forms) == 2
    assert len(extra) == 2 + 2 + 2


def test_inductive_extension_without_datatypes():
    th = builtin_theory("E")
    assert reflective_inductive_extension(th).axioms == reflective_extension(th).axioms
