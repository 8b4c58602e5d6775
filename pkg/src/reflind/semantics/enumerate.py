"""Deterministic enumeration of terms and core formulas.

Order: by depth; within a depth by constructor (``false``, predicate atoms,
equations, ``~``, ``|``, ``forall``); within a constructor lexicographically
on the children, each child position following the same order.  Only
symbols whose profile lies in the base sorts are used.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from ..logic import (
    BOT,
    App,
    Eq,
    Forall,
    Formula,
    FunSym,
    Not,
    Or,
    Pred,
    PredSym,
    Signature,
    Sort,
    Term,
    Var,
)


def _base_symbols(sig: Signature) -> tuple[tuple[Sort, ...], tuple[FunSym, ...], tuple[PredSym, ...]]:
    sorts = sig.base_sorts()
    ok = set(sorts)
    funs = tuple(f for f in sig.funs if f.codomain in ok and all(s in ok for s in f.domain))
    preds = tuple(p for p in sig.preds if all(s in ok for s in p.domain))
    return sorts, funs, preds


class Enumerator:
    """Memoized enumeration over one signature.

    ``scope`` arguments are frozensets of variables usable in terms.
    """

    def __init__(self, sig: Signature, term_depth: int = 0):
        self.sig = sig
        self.sorts, self.funs, self.preds = _base_symbols(sig)
        self.term_depth = term_depth
        self._terms_exact: dict = {}
        self._terms_upto: dict = {}
        self._atoms: dict = {}
        self._exact: dict = {}
        self._upto: dict = {}

    # terms

    def terms_exact(self, sort: Sort, d: int, scope: frozenset[Var]) -> tuple[Term, ...]:
        key = (sort, d, scope)
        hit = self._terms_exact.get(key)
        if hit is not None:
            return hit
        out: list[Term] = []
        if d == 0:
            out += [App(f) for f in self.funs if f.codomain == sort and not f.domain]
            out += sorted((v for v in scope if v.sort == sort), key=lambda v: v.index)
        else:
            for f in self.funs:
                if f.codomain != sort or not f.domain:
                    continue
                pools = [self.terms_upto(s, d - 1, scope) for s in f.domain]
                for args in product(*pools):
                    if max(_tdepth(a) for a in args) == d - 1:
                        out.append(App(f, args))
        res = tuple(out)
        self._terms_exact[key] = res
        return res

    def terms_upto(self, sort: Sort, d: int, scope: frozenset[Var]) -> tuple[Term, ...]:
        key = (sort, d, scope)
        hit = self._terms_upto.get(key)
        if hit is not None:
            return hit
        out: list[Term] = []
        for k in range(d + 1):
            out += self.terms_exact(sort, k, scope)
        res = tuple(out)
        self._terms_upto[key] = res
        return res

    # formulas

    def atoms(self, scope: frozenset[Var]) -> tuple[Formula, ...]:
        hit = self._atoms.get(scope)
        if hit is not None:
            return hit
        td = self.term_depth
        out: list[Formula] = [BOT]
        for p in self.preds:
            for args in product(*(self.terms_upto(s, td, scope) for s in p.domain)):
                out.append(Pred(p, args))
        for s in self.sorts:
            ts = self.terms_upto(s, td, scope)
            for l, r in product(ts, ts):
                out.append(Eq(s, l, r))
        res = tuple(out)
        self._atoms[scope] = res
        return res

    def binders(self, budget: int) -> list[Var]:
        return [Var(i, s) for s in self.sorts for i in range(budget)]

    def exact(self, d: int, scope: frozenset[Var], budget: int) -> Sequence[Formula]:
        key = (d, scope, budget)
        hit = self._exact.get(key)
        if hit is None:
            hit = tuple(self.iter_exact(d, scope, budget))
            self._exact[key] = hit
        return hit

    def upto(self, d: int, scope: frozenset[Var], budget: int) -> Sequence[Formula]:
        key = (d, scope, budget)
        hit = self._upto.get(key)
        if hit is None:
            out: list[Formula] = []
            for k in range(d + 1):
                out += self.exact(k, scope, budget)
            hit = tuple(out)
            self._upto[key] = hit
        return hit

    def iter_exact(self, d: int, scope: frozenset[Var], budget: int) -> Iterator[Formula]:
        if d == 0:
            yield from self.atoms(scope)
            return
        below = self.exact(d - 1, scope, budget)
        for a in below:
            yield Not(a)
        upto = self.upto(d - 1, scope, budget)
        shallow = self.upto(d - 2, scope, budget) if d >= 2 else ()
        n_shallow = len(shallow)
        # pairs with at least one side of depth exactly d-1; ``upto`` lists
        # shallower formulas first, so index >= n_shallow means depth d-1
        for i, a in enumerate(upto):
            if i >= n_shallow:
                for b in upto:
                    yield Or(a, b)
            else:
                for b in upto[n_shallow:]:
                    yield Or(a, b)
        for v in self.binders(budget):
            for body in self.exact(d - 1, scope | {v}, budget):
                yield Forall(v, body)

    def count_exact(self, d: int, scope: frozenset[Var], budget: int) -> int:
        """``len(self.exact(d, scope, budget))`` without building the formulas."""
        key = ("n", d, scope, budget)
        hit = self._exact.get(key)
        if hit is not None:
            return hit
        if d == 0:
            n = len(self.atoms(scope))
        else:
            upto = self.count_upto(d - 1, scope, budget)
            shallow = self.count_upto(d - 2, scope, budget) if d >= 2 else 0
            n = self.count_exact(d - 1, scope, budget) + upto * upto - shallow * shallow
            n += sum(self.count_exact(d - 1, scope | {v}, budget) for v in self.binders(budget))
        self._exact[key] = n
        return n

    def count_upto(self, d: int, scope: frozenset[Var], budget: int) -> int:
        return sum(self.count_exact(k, scope, budget) for k in range(d + 1))

    def formulas(self, depth: int, budget: int, free: Iterable[Var] = ()) -> Iterator[Formula]:
        scope = frozenset(free)
        for d in range(depth + 1):
            if d < depth:
                yield from self.exact(d, scope, budget)
            else:
                yield from self.iter_exact(d, scope, budget)


def _tdepth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(_tdepth(a) for a in t.args)


def enumerate_formulas(
    sig: Signature,
    depth: int,
    var_budget: int = 1,
    term_depth: int = 0,
    free: Iterable[Var] = (),
) -> Iterator[Formula]:
    """Core formulas of depth at most ``depth`` whose free variables lie in ``free``.

    Quantifiers bind ``x_i`` with ``i < var_budget``; atom arguments are terms
    of depth at most ``term_depth``.  With ``free`` empty every formula is
    closed.
    """
    return Enumerator(sig, term_depth).formulas(depth, var_budget, free)


def count_formulas(sig: Signature, depth: int, var_budget: int = 1, term_depth: int = 0, free: Iterable[Var] = ()) -> int:
    return Enumerator(sig, term_depth).count_upto(depth, frozenset(free), var_budget)


def enumerate_terms_upto(sig: Signature, sort: Sort, depth: int, scope: Iterable[Var] = ()) -> tuple[Term, ...]:
    return Enumerator(sig).terms_upto(sort, depth, frozenset(scope))


def ground_terms(sig: Signature, sort: Sort, depth: int) -> tuple[Term, ...]:
    return enumerate_terms_upto(sig, sort, depth, ())


@lru_cache(maxsize=32)
def _cached_enumerator(sig: Signature, term_depth: int) -> Enumerator:
    return Enumerator(sig, term_depth)


def random_formula(
    sig: Signature,
    depth: int,
    rng: random.Random,
    var_budget: int = 1,
    term_depth: int = 0,
    scope: frozenset[Var] = frozenset(),
) -> Formula:
    """A random core formula of depth at most ``depth`` over ``scope``."""
    en = _cached_enumerator(sig, term_depth)
    if depth == 0 or rng.random() < 0.15:
        return rng.choice(en.atoms(scope))
    pick = rng.random()
    if pick < 0.25:
        return Not(random_formula(sig, depth - 1, rng, var_budget, term_depth, scope))
    if pick < 0.6:
        return Or(
            random_formula(sig, depth - 1, rng, var_budget, term_depth, scope),
            random_formula(sig, depth - 1, rng, var_budget, term_depth, scope),
        )
    v = rng.choice(en.binders(var_budget))
    return Forall(v, random_formula(sig, depth - 1, rng, var_budget, term_depth, scope | {v}))


__all__ = [
    "Enumerator",
    "enumerate_formulas",
    "count_formulas",
    "enumerate_terms_upto",
    "ground_terms",
    "random_formula",
]
