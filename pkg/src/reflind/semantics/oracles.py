"""Executable checks of the metatheorems at desk scale.

Each sweep returns a :class:`CheckReport`; ``ok`` means no violation was
found among the instances it looked at.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import islice
from typing import Sequence

from ..benchgen import builtin_theory
from ..induction import InductionTemplate, induction_scheme_instance, instantiate, reflective_induction_axiom
from ..logic import (
    Formula,
    Sort,
    Theory,
    Var,
    alpha_eq,
    normalize,
    show,
    substitute,
)
from ..reflection import godel_encode, reflect_axioms, reflect_signature
from .compile import Layout, code_batch, count_models, decode_model, direct_batch, enumerate_models, pack
from .enumerate import Enumerator, enumerate_formulas, enumerate_terms_upto, ground_terms, random_formula
from .kernel import eval_batch
from .model import TRUE, EMPTY, Interpretation, check_truth_predicate, eval_formula, push_all, reflective_model
from .partial_eval import partial_eval, rewriter_for


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    agreements: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.agreements == self.checked

    def fail(self, msg: str, keep: int = 20) -> None:
        if len(self.failures) < keep:
            self.failures.append(msg)
        self.notes["failures"] = self.notes.get("failures", 0) + 1

    def summary(self) -> str:
        bad = self.checked - self.agreements
        word = "disagreements" if self.name in ("theorem2", "theorem1") else "failures"
        head = f"{self.notes['formulas']} formulas checked, " if "formulas" in self.notes else ""
        return f"{self.name}: {head}{self.checked} instances, {bad} {word}"


def _theory(t: Theory | str) -> Theory:
    return builtin_theory(t) if isinstance(t, str) else t


# -- finite models -----------------------------------------------------------


def finite_models(theory: Theory | str, size: int = 2, limit: int = 1 << 18) -> list:
    """All packed models of ``theory`` with every carrier of the given size.

    Candidate tables are enumerated exhaustively and filtered by the axioms
    with the kernel; raises ``ValueError`` beyond ``limit`` candidates.
    """
    T = _theory(theory)
    L = Layout.of(T.signature, size)
    n = count_models(L)
    if n > limit:
        raise ValueError(f"{n} candidate models exceed the limit {limit}")
    axioms = [normalize(a) for a in T.axioms]
    out = []
    chunk: list = []

    def flush():
        if not chunk:
            return
        if axioms:
            res = eval_batch(direct_batch(L, axioms), pack(chunk), len(chunk), L)
            k = len(chunk)
            for j, m in enumerate(chunk):
                if all(res[i * k + j] for i in range(len(axioms))):
                    out.append(m)
        else:
            out.extend(chunk)
        chunk.clear()

    for m in enumerate_models(L):
        chunk.append(m)
        if len(chunk) >= 4096:
            flush()
    flush()
    return out


# -- truth predicate -----------------------------------------------------------


def closed_formulas(sig, depth: int, budget: int = 1, sample: int = 2000, seed: int = 0) -> list[Formula]:
    """All closed core formulas to ``depth`` when ``depth <= 2``, else a seeded sample."""
    if depth <= 2:
        return list(enumerate_formulas(sig, depth, budget))
    rng = random.Random(seed)
    return [random_formula(sig, depth, rng, budget) for _ in range(sample)]


def theorem2(
    theory: Theory | str = "E",
    depth: int = 2,
    size: int = 2,
    models: int | None = None,
    seed: int = 0,
    cross_check: int = 200,
    sample: int = 2000,
) -> CheckReport:
    """``phi`` against ``empty |= code(phi)`` on every closed formula and model.

    The direct route evaluates ``phi``; the code route reads the Gödel code
    through the reflective constructors and an environment stack.  A subsample
    is also run through :func:`check_truth_predicate`, which evaluates the
    satisfaction atom in the interpretation built by :func:`reflective_model`.
    """
    T = _theory(theory)
    sig = T.signature
    rm = reflect_signature(T)
    L = Layout.of(sig, size)
    all_models = list(enumerate_models(L))
    rng = random.Random(seed)
    chosen = all_models if models is None or models >= len(all_models) else rng.sample(all_models, models)
    fs = closed_formulas(sig, depth, 1, sample, seed)
    db = direct_batch(L, fs)
    cb = code_batch(L, (godel_encode(f, rm) for f in fs), rm)
    P = pack(chosen)
    k = len(chosen)
    a = eval_batch(db, P, k, L)
    b = eval_batch(cb, P, k, L)
    rep = CheckReport("theorem2")
    rep.notes.update(formulas=len(fs), models=k, depth=depth, size=size)
    rep.checked = len(fs) * k
    if a == b:
        rep.agreements = rep.checked
    else:
        for idx in range(len(a)):
            if a[idx] == b[idx]:
                rep.agreements += 1
            else:
                rep.fail(f"{show(fs[idx // k])} in model {idx % k}")
    step = max(1, len(fs) // max(1, cross_check))
    crng = random.Random(seed + 1)
    for i in range(0, len(fs), step):
        j = crng.randrange(k)
        M = decode_model(L, chosen[j])
        rep.checked += 1
        ok = check_truth_predicate(M, fs[i]) and (eval_formula(M, fs[i]) is TRUE) == bool(a[i * k + j])
        if ok:
            rep.agreements += 1
        else:
            rep.fail(f"reflective model disagrees on {show(fs[i])}")
    return rep


# -- pushed environments -------------------------------------------------------


def open_formulas(sig, sort: Sort, depth: int, budget: int = 1, sample: int = 500, seed: int = 0) -> list[Formula]:
    """Core formulas whose only free variable is ``x0`` of ``sort``.

    All of them to ``depth`` when ``depth <= 2``, else a seeded sample.
    """
    x0 = Var(0, sort)
    if depth <= 2:
        return list(enumerate_formulas(sig, depth, budget, free=[x0]))
    rng = random.Random(seed)
    return [random_formula(sig, depth, rng, budget, 0, frozenset([x0])) for _ in range(sample)]


def formula2(
    theory: Theory | str = "N+Add",
    depth: int = 2,
    term_depth: int = 2,
    budget: int = 1,
    sort_name: str = "nat",
    sample: int = 500,
    seed: int = 0,
) -> CheckReport:
    """``push(empty, v0, t) |= code(phi)`` partially evaluates to ``phi[x0 := t]``."""
    T = _theory(theory)
    sig = T.signature
    rm = reflect_signature(T)
    rw = rewriter_for(rm)
    sort = sig.sort(sort_name)
    x0 = Var(0, sort)
    rep = CheckReport("formula2")
    fs = open_formulas(sig, sort, depth, budget, sample, seed)
    ts = ground_terms(sig, sort, term_depth)
    rep.notes.update(formulas=len(fs), terms=len(ts))
    for phi in fs:
        code = godel_encode(phi, rm)
        for t in ts:
            rep.checked += 1
            got = partial_eval(rm.true_at(sort, code, t), rm, rw)
            want = normalize(substitute(phi, x0, t))
            if alpha_eq(got, want):
                rep.agreements += 1
            else:
                rep.fail(f"{show(phi)} at {show(t)}: got {show(got)}")
    return rep


# -- scheme recovery -----------------------------------------------------------


def theorem3(
    theory: Theory | str = "N+Add",
    depth: int = 2,
    budget: int = 1,
    sort_name: str = "nat",
    sample: int = 500,
    seed: int = 0,
) -> CheckReport:
    """Partially evaluated ``I_tau`` at ``code(phi)`` equals the scheme instance for ``phi``."""
    T = _theory(theory)
    rm = reflect_signature(T)
    rw = rewriter_for(rm)
    sort = T.signature.sort(sort_name)
    dt = T.datatype(sort)
    axiom = reflective_induction_axiom(dt, rm)
    rep = CheckReport("theorem3")
    fs = open_formulas(T.signature, sort, depth, budget, sample, seed)
    rep.notes.update(formulas=len(fs))
    for phi in fs:
        rep.checked += 1
        got = partial_eval(instantiate(axiom, godel_encode(phi, rm)), rm, rw)
        want = induction_scheme_instance(InductionTemplate(dt, Var(0, sort), phi))
        if alpha_eq(normalize(got), normalize(want)):
            rep.agreements += 1
        else:
            rep.fail(f"{show(phi)}: got {show(got)}")
    return rep


# -- reflective model of a model -----------------------------------------------


def reflective_pools(M: Interpretation, rm, depth: int = 1, forms: int = 12, seed: int = 0) -> dict:
    """Finite pools for the reflective sorts used to ground the reflective axioms.

    Variables ``x0, x1`` per sort, terms to depth ``min(depth, 1)`` over those
    variables, environments of up to two frames, and ``forms`` formulas: the
    first ones in enumeration order plus seeded random ones to ``depth``.
    """
    sig = rm.base
    rng = random.Random(seed)
    vs = {s: [Var(0, s), Var(1, s)] for s in sig.sorts}
    scope = [v for s in sig.sorts for v in vs[s]]
    pools: dict = {}
    for s in sig.sorts:
        pools[rm.var_sort[s]] = vs[s]
        pools[rm.term_sort[s]] = list(enumerate_terms_upto(sig, s, min(depth, 1), scope))
    frames = [(v, d) for s in sig.sorts for v in vs[s] for d in M.domains[s]]
    envs = [EMPTY] + [push_all(EMPTY, [f]) for f in frames]
    envs += [push_all(EMPTY, [f, g]) for f in frames for g in frames]
    pools[rm.env] = envs
    en = Enumerator(sig)
    first = list(islice(en.formulas(1, 2, scope), forms // 2))
    extra = [random_formula(sig, depth, rng, 2, 0, frozenset(scope)) for _ in range(forms - len(first))]
    pools[rm.form] = list(dict.fromkeys(first + extra))
    return pools


def theorem1(
    theories: Sequence[Theory | str] = ("E", "N+Add", "N+Leq", "N+Add+Mul", "N+L+App"),
    size: int = 2,
    depth: int = 1,
    max_models: int = 4,
    forms: int = 12,
    seed: int = 0,
) -> CheckReport:
    """Every reflective axiom holds in the reflective model of finite models of ``T``.

    Models come from exhaustive search with carriers of ``size`` elements; at
    most ``max_models`` per theory are lifted.  Reflective quantifiers range
    over :func:`reflective_pools`, which is exact for the pool because every
    reflective axiom is universally closed.
    """
    rep = CheckReport("theorem1")
    rng = random.Random(seed)
    for th in theories:
        T = _theory(th)
        rm = reflect_signature(T)
        axioms = reflect_axioms(T, rm)
        L = Layout.of(T.signature, size)
        ms = finite_models(T, size)
        rep.notes[T.name] = len(ms)
        pick = ms if len(ms) <= max_models else rng.sample(ms, max_models)
        for vec in pick:
            M = decode_model(L, vec)
            pools = reflective_pools(M, rm, depth, forms, seed)
            R = reflective_model(M, rm, pools=pools)
            for ax in axioms:
                rep.checked += 1
                if eval_formula(R, ax) is TRUE:
                    rep.agreements += 1
                else:
                    rep.fail(f"{T.name}: {show(ax)}")
    return rep


SUITES = {
    "theorem1": theorem1,
    "theorem2": theorem2,
    "formula2": formula2,
    "theorem3": theorem3,
}


__all__ = [
    "CheckReport",
    "SUITES",
    "finite_models",
    "closed_formulas",
    "open_formulas",
    "reflective_pools",
    "theorem1",
    "theorem2",
    "formula2",
    "theorem3",
]
