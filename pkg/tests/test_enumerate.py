import random
from functools import lru_cache

import pytest

from conftest import sig_of
from reflind.logic import Bot, Eq, Forall, Not, Or, Pred, Var, formula_depth, is_closed, is_core
from reflind.semantics.enumerate import (
    count_formulas,
    enumerate_formulas,
    enumerate_terms_upto,
    ground_terms,
    random_formula,
)

E = sig_of("E")


def oracle_count(n_consts, n_preds, depth, budget):
    """Closed core formulas over a one-sorted signature of constants and
    unary predicates, written from the grammar alone."""

    def atoms(k):
        terms = n_consts + k
        return 1 + n_preds * terms + terms * terms

    @lru_cache(maxsize=None)
    def n(d, scope):
        a = atoms(len(scope))
        if d == 0:
            return a
        sub = n(d - 1, scope)
        quant = sum(n(d - 1, scope | frozenset([i])) for i in range(budget))
        return a + sub + sub * sub + quant

    return n(depth, frozenset())


def test_depth0_atoms():
    got = list(enumerate_formulas(E, 0))
    assert got[0] == Bot()
    assert len(got) == 1 + 9 + 9
    assert all(isinstance(f, (Bot, Pred, Eq)) for f in got)


def test_depth1_wraps_depth0():
    d0 = set(enumerate_formulas(E, 0))
    d1 = list(enumerate_formulas(E, 1))
    assert d0 <= set(d1)
    assert {type(f) for f in d1} == {Bot, Pred, Eq, Not, Or, Forall}


@pytest.mark.parametrize("depth,budget", [(0, 1), (1, 1), (2, 1), (1, 2), (2, 2), (3, 1)])
def test_count_matches_oracle(depth, budget):
    assert count_formulas(E, depth, budget) == oracle_count(3, 3, depth, budget)


def test_count_known_values():
    assert oracle_count(3, 3, 1, 1) == 428
    assert oracle_count(3, 3, 2, 1) == 184559


@pytest.mark.parametrize("depth,budget", [(1, 1), (1, 2)])
def test_enumeration_matches_count(depth, budget):
    got = list(enumerate_formulas(E, depth, budget))
    assert len(got) == count_formulas(E, depth, budget)


def test_enumeration_properties():
    got = list(enumerate_formulas(E, 1, 2))
    assert len(set(got)) == len(got)
    assert got == list(enumerate_formulas(E, 1, 2))
    for f in got:
        assert is_closed(f) and is_core(f) and formula_depth(f) <= 1
        for v in _vars(f):
            assert v.index < 2


def _vars(f):
    if isinstance(f, Forall):
        yield f.var
        yield from _vars(f.body)
    elif isinstance(f, Not):
        yield from _vars(f.arg)
    elif isinstance(f, Or):
        yield from _vars(f.left)
        yield from _vars(f.right)


def ground_oracle(depth):
    # N+Add nat terms: zero | s(t) | add(t, u)
    k = 1
    for _ in range(depth):
        k = 1 + k + k * k
    return k


@pytest.mark.parametrize("depth", [0, 1, 2, 3])
def test_ground_terms_count(depth):
    sig = sig_of("N+Add")
    terms = ground_terms(sig, sig.sort("nat"), depth)
    assert len(terms) == ground_oracle(depth) == len(set(terms))


def test_terms_with_scope():
    sig = sig_of("N")
    nat = sig.sort("nat")
    x = Var(0, nat)
    terms = enumerate_terms_upto(sig, nat, 1, [x])
    assert set(terms) >= {x}
    assert len(terms) == 4  # zero, x0, s(zero), s(x0)


def test_random_formula_deterministic():
    a = [random_formula(E, 3, random.Random(7)) for _ in range(5)]
    b = [random_formula(E, 3, random.Random(7)) for _ in range(5)]
    assert a == b
    for f in a:
        assert is_closed(f) and is_core(f) and formula_depth(f) <= 3
