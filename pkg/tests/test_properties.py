"""Property tests over randomly generated formulas."""

import random

from hypothesis import given, settings, strategies as st

from conftest import sig_of
from reflind.benchgen import builtin_theory
from reflind.logic import (
    And,
    App,
    Bot,
    Eq,
    Exists,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    Top,
    Var,
    alpha_eq,
    free_vars,
    is_core,
    normalize,
    subst_many,
    substitute,
    term_vars,
)
from reflind.reflection import godel_decode, godel_encode, reflect_signature
from reflind.semantics.compile import Layout, count_models, decode_model, enumerate_models
from reflind.semantics.enumerate import random_formula
from reflind.semantics.model import UNKNOWN, eval_formula, eval_term, standard_model, truth_atom
from reflind.semantics.partial_eval import partial_eval

E = builtin_theory("E")
SIG = E.signature
ALPHA = SIG.sort("alpha")
VARS = [Var(i, ALPHA) for i in range(3)]
RM = reflect_signature(E)
LAY = Layout.of(SIG, 2)
MODELS = list(enumerate_models(LAY))

terms = st.one_of(st.sampled_from([App(SIG.fun(n)) for n in "abc"]), st.sampled_from(VARS))
atoms = st.one_of(
    st.just(Bot()),
    st.just(Top()),
    st.builds(lambda p, t: Pred(SIG.pred(p), (t,)), st.sampled_from("pqr"), terms),
    st.builds(lambda l, r: Eq(ALPHA, l, r), terms, terms),
)
binary = (Or, And, Implies, Iff)
formulas = st.recursive(
    atoms,
    lambda sub: st.one_of(
        st.builds(Not, sub),
        st.builds(lambda k, x, y: binary[k](x, y), st.integers(0, 3), sub, sub),
        st.builds(lambda q, v, b: (Forall, Exists)[q](v, b), st.integers(0, 1), st.sampled_from(VARS), sub),
    ),
    max_leaves=8,
)
models = st.sampled_from(MODELS).map(lambda vec: decode_model(LAY, vec))
assignments = st.tuples(*[st.integers(0, 1)] * 3).map(lambda t: dict(zip(VARS, t)))


def closed(phi):
    for v in sorted(free_vars(phi), key=lambda v: v.index):
        phi = Forall(v, phi)
    return phi


@given(formulas)
def test_normalize_idempotent_and_core(phi):
    n = normalize(phi)
    assert is_core(n)
    assert normalize(n) == n
    assert free_vars(n) == free_vars(phi)


@given(formulas, models, assignments)
def test_normalize_preserves_truth(phi, M, a):
    assert eval_formula(M, normalize(phi), assignment=a) is eval_formula(M, phi, assignment=a)


@given(formulas, st.sampled_from(VARS), terms)
def test_substitution_free_variables(phi, x, t):
    out = substitute(phi, x, t)
    want = free_vars(phi) - {x}
    if x in free_vars(phi):
        want |= term_vars(t)
    assert free_vars(out) == want


@given(formulas, st.sampled_from(VARS), terms, models, assignments)
def test_substitution_lemma(phi, x, t, M, a):
    # capture would make the two sides disagree in some model
    shifted = dict(a)
    shifted[x] = eval_term(M, t, a)
    assert eval_formula(M, substitute(phi, x, t), assignment=a) is eval_formula(M, phi, assignment=shifted)


@given(formulas, st.permutations(VARS))
def test_renaming_is_alpha_equivalence_on_closed(phi, perm):
    c = closed(phi)
    renamed = subst_many(c, dict(zip(VARS, perm)))
    assert alpha_eq(c, c)
    assert alpha_eq(renamed, c)


@given(formulas)
def test_codec_roundtrip(phi):
    core = normalize(closed(phi))
    code = godel_encode(core, RM)
    assert godel_decode(code, RM) == core
    assert godel_encode(godel_decode(code, RM), RM) == code


@given(formulas, models)
@settings(max_examples=60)
def test_partial_eval_sound(phi, M):
    core = normalize(closed(phi))
    out = partial_eval(truth_atom(RM, core), RM)
    assert eval_formula(M, out) is eval_formula(M, core)


NADD = sig_of("N+Add")
NAT_M = standard_model(NADD)


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 8))
@settings(max_examples=80, deadline=None)
def test_budget_monotone(seed, lo, extra):
    phi = random_formula(NADD, 3, random.Random(seed), var_budget=2, term_depth=1)
    low = eval_formula(NAT_M, phi, budget=lo)
    high = eval_formula(NAT_M, phi, budget=lo + extra)
    if low is not UNKNOWN:
        assert high is low


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_codec_roundtrip_with_terms(seed):
    th = builtin_theory("N+L+App")
    rm = reflect_signature(th)
    phi = random_formula(th.signature, 3, random.Random(seed), var_budget=2, term_depth=2)
    assert godel_decode(godel_encode(phi, rm), rm) == phi


def test_model_space_size():
    assert count_models(LAY) == len(MODELS) == 512
