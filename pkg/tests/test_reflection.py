import time

import pytest

from conftest import F, sig_of
from reflind.benchgen import CATALOG_COMBINATIONS, builtin_theory
from reflind.errors import AlreadyReflected, NameCollision, NotCore, NotInImage
from reflind.logic import (
    App,
    Bot,
    Eq,
    Forall,
    FunSym,
    Iff,
    Or,
    Pred,
    Signature,
    Sort,
    Theory,
    Var,
    closure,
    normalize,
    typecheck,
)
from reflind.reflection import (
    godel_decode,
    godel_encode,
    is_code,
    recover_map,
    reflect_axioms,
    reflect_signature,
    reflective_extension,
)


def added(theory):
    rm = reflect_signature(theory)
    base = theory.signature
    ext = rm.signature
    sorts = len(ext.sorts) - len(base.sorts)
    syms = len(ext.funs) + len(ext.preds) - len(base.funs) - len(base.preds)
    return rm, sorts, syms


def law_symbols(s, f, p):
    # per sort: v0 next inj eqdot forall push evalv eval; one dotted symbol per f and P;
    # globals botdot ordot negdot empty models
    return 8 * s + f + p + 5


def law_axioms(s, f, p):
    # evalv_0 evalv_1 eval_var eq forall per sort, evalv_2 per ordered pair, bot/neg/or once
    return 5 * s + s * (s - 1) + f + p + 3


@pytest.mark.parametrize("name", CATALOG_COMBINATIONS)
def test_cardinality_laws(name):
    th = builtin_theory(name)
    sig = th.signature
    s, f, p = len(sig.sorts), len(sig.funs), len(sig.preds)
    rm, sorts, syms = added(th)
    assert sorts == 2 * s + 2
    assert syms == law_symbols(s, f, p)
    assert len(reflect_axioms(th, rm)) == law_axioms(s, f, p)


def test_theory_e_counts():
    th = builtin_theory("E")
    rm, sorts, syms = added(th)
    assert (sorts, syms) == (4, 19)
    assert len(reflect_axioms(th, rm)) == 14


def test_empty_signature_counts():
    th = Theory("empty", Signature())
    rm, sorts, syms = added(th)
    assert (sorts, syms) == (2, 5)
    assert len(reflect_axioms(th, rm)) == 3


def test_add_counts_and_profile():
    th = builtin_theory("N+Add")
    rm, sorts, syms = added(th)
    assert (sorts, syms) == (4, 16)
    nat = th.signature.sort("nat")
    dadd = rm.dotted_funs[th.signature.fun("add")]
    tn = rm.term_sort[nat]
    assert dadd.domain == (tn, tn) and dadd.codomain == tn


def test_evalv2_pairs_two_sorts():
    th = builtin_theory("N+L+App")
    rm = reflect_signature(th)
    axs = reflect_axioms(th, rm)
    evalv = set(rm.evalv.values())
    push = set(rm.push.values())

    def mixed(ax):
        # Ax_evalv_2: evalv_s(push_t(e, w, d), v) with s != t
        body = ax
        while isinstance(body, Forall):
            body = body.body
        if not isinstance(body, Eq):
            return False
        lhs = body.lhs
        return (
            isinstance(lhs, App)
            and lhs.fun in evalv
            and isinstance(lhs.args[0], App)
            and lhs.args[0].fun in push
            and lhs.args[0].fun.domain[2].name != lhs.fun.codomain.name
        )

    assert sum(map(mixed, axs)) == 2


def test_or_axiom_literal():
    th = builtin_theory("E")
    rm = reflect_signature(th)
    e = Var(0, rm.env)
    a, b = Var(0, rm.form), Var(1, rm.form)
    models = lambda env, f: Pred(rm.models, (env, f))
    expect = closure(Iff(models(e, App(rm.ordot, (a, b))), Or(models(e, a), models(e, b))))
    assert expect in reflect_axioms(th, rm)


def test_generated_names_disjoint_and_typecheck():
    th = builtin_theory("N+L+App+Rev")
    ext = reflective_extension(th)
    typecheck(ext)
    base = set(th.signature.symbol_names())
    new = set(ext.signature.symbol_names()) - base
    assert new and not (new & base)
    assert all("'r" in n or "_" in n or n in {"botdot", "ordot", "negdot", "empty", "models"} for n in new)


def test_name_collision():
    alpha = Sort("alpha")
    sig = Signature((alpha,), (FunSym("empty", (), alpha),))
    with pytest.raises(NameCollision):
        reflect_signature(Theory("bad", sig))


def test_double_reflection_blocked():
    ext = reflective_extension(builtin_theory("N+Add"))
    with pytest.raises(AlreadyReflected):
        reflective_extension(ext)


def test_extension_keeps_base_axioms():
    th = builtin_theory("N+Add")
    ext = reflective_extension(th)
    assert ext.axioms[: len(th.axioms)] == th.axioms
    assert len(ext.axioms) == len(th.axioms) + law_axioms(1, 3, 0)
    e = reflective_extension(builtin_theory("E"))
    assert len(e.axioms) == 14


def test_recover_map():
    ext = reflective_extension(builtin_theory("N+L+App"))
    rm = recover_map(ext)
    assert rm == reflect_signature(builtin_theory("N+L+App"))


# -- Gödel codec ---------------------------------------------------------------


def rm_e():
    return reflect_signature(builtin_theory("E"))


def test_encode_eq_refl():
    rm = rm_e()
    alpha = rm.base.sort("alpha")
    v0 = App(rm.v0[alpha])
    x = App(rm.inj[alpha], (v0,))
    code = godel_encode(normalize(F("forall x:alpha. x = x")), rm)
    assert code == App(rm.forall[alpha], (v0, App(rm.eqdot[alpha], (x, x))))
    assert code.fun.codomain == rm.form


def test_encode_bot():
    rm = rm_e()
    assert godel_encode(Bot(), rm) == App(rm.botdot)


def test_encode_excluded_middle():
    rm = rm_e()
    sig = rm.base
    pa = App(rm.dotted_preds[sig.pred("p")], (App(rm.dotted_funs[sig.fun("a")]),))
    code = godel_encode(normalize(F("p(a) | ~p(a)")), rm)
    assert code == App(rm.ordot, (pa, App(rm.negdot, (pa,))))


def test_encode_variable_index_is_next_chain():
    rm = rm_e()
    alpha = rm.base.sort("alpha")
    code = godel_encode(Eq(alpha, Var(2, alpha), Var(2, alpha)), rm)
    v = code.args[0].args[0]
    assert v == App(rm.next[alpha], (App(rm.next[alpha], (App(rm.v0[alpha]),)),))


def test_encode_rejects_sugar():
    with pytest.raises(NotCore):
        godel_encode(F("p(a) & p(b)"), rm_e())


def test_decode_inverts():
    rm = rm_e()
    assert godel_decode(App(rm.botdot), rm) == Bot()
    phi = normalize(F("forall x:alpha. x = x"))
    assert godel_decode(godel_encode(phi, rm), rm) == phi


def test_decode_rejects_eval():
    rm = reflect_signature(builtin_theory("N+Add"))
    nat = rm.base.sort("nat")
    bad = App(rm.eval[nat], (App(rm.empty), App(rm.dotted_funs[rm.base.fun("zero")])))
    with pytest.raises(NotInImage):
        godel_decode(bad, rm)
    assert not is_code(bad, rm)


def test_encode_sort_correctness():
    rm = reflect_signature(builtin_theory("N+Add"))
    nat = rm.base.sort("nat")
    phi = normalize(F("forall x:nat. add(x, s(zero)) = s(x)", "N+Add"))
    code = godel_encode(phi, rm)
    assert code.fun.codomain == rm.form
    eqn = code.args[1]
    for side in eqn.args:
        assert side.fun.codomain == rm.term_sort[nat]


def test_roundtrip_smoke_timing():
    from reflind.semantics.enumerate import enumerate_formulas

    rm = rm_e()
    t0 = time.perf_counter()
    n = 0
    for phi in enumerate_formulas(sig_of("E"), 2):
        assert godel_decode(godel_encode(phi, rm), rm) == phi
        n += 1
    assert n > 1000
    assert time.perf_counter() - t0 < 30
