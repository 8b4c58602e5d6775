"""Interpretations, three-valued evaluation and the reflective model.

Carriers are either finite tuples or generators.  A quantifier over a
generator carrier can refute (finding a counterexample among the first
``budget`` elements) but never confirm, so such formulas come out
``UNKNOWN`` rather than wrongly ``TRUE``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import count, islice, product
from typing import Any, Callable, Iterable, Iterator, Mapping

from ..errors import MissingSymbol, Undecided, UnassignedVariable
from ..logic import (
    BOT,
    And,
    App,
    Bot,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    Signature,
    Sort,
    Term,
    Top,
    Var,
    check_term,
    normalize,
)
from ..reflection import ReflectionMap, godel_encode, reflect_signature

DEFAULT_BUDGET = 64


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, b: bool) -> "TruthValue":
        return cls.TRUE if b else cls.FALSE

    @property
    def definite(self) -> bool:
        return self is not TruthValue.UNKNOWN

    def as_bool(self) -> bool:
        if self is TruthValue.UNKNOWN:
            raise Undecided("evaluation budget exhausted before a verdict")
        return self is TruthValue.TRUE

    def __invert__(self) -> "TruthValue":
        if self is TruthValue.TRUE:
            return TruthValue.FALSE
        if self is TruthValue.FALSE:
            return TruthValue.TRUE
        return self

    def __or__(self, other: "TruthValue") -> "TruthValue":
        if TruthValue.TRUE in (self, other):
            return TruthValue.TRUE
        if TruthValue.UNKNOWN in (self, other):
            return TruthValue.UNKNOWN
        return TruthValue.FALSE

    def __and__(self, other: "TruthValue") -> "TruthValue":
        return ~(~self | ~other)


TRUE, FALSE, UNKNOWN = TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNKNOWN


def _tv(x) -> TruthValue:
    return x if isinstance(x, TruthValue) else TruthValue.of(bool(x))


# -- carriers ----------------------------------------------------------------


class FiniteCarrier:
    finite = True

    def __init__(self, elements: Iterable[Any]):
        self.elements = tuple(elements)
        self._members = set(self.elements)

    def __iter__(self) -> Iterator[Any]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        try:
            return x in self._members
        except TypeError:
            return False

    def first(self):
        if not self.elements:
            raise ValueError("empty carrier has no first element")
        return self.elements[0]

    def __repr__(self) -> str:
        return f"FiniteCarrier({list(self.elements)!r})"


class GeneratorCarrier:
    """An infinite carrier given by a repeatable enumeration and a membership test."""

    finite = False

    def __init__(self, generate: Callable[[], Iterable[Any]], contains: Callable[[Any], bool], name: str = ""):
        self.generate = generate
        self.contains = contains
        self.name = name

    def __iter__(self) -> Iterator[Any]:
        return iter(self.generate())

    def take(self, n: int) -> list:
        return list(islice(self.generate(), n))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def first(self):
        return next(iter(self.generate()))

    def __repr__(self) -> str:
        return f"GeneratorCarrier({self.name})"


Carrier = FiniteCarrier | GeneratorCarrier


# -- interpretations ---------------------------------------------------------


@dataclass(frozen=True)
class Interpretation:
    """Domains, symbol meanings (callables keyed by symbol name) and an assignment.

    With ``total`` set, variables missing from ``assignment`` denote the first
    element of their carrier instead of raising :class:`UnassignedVariable`.
    """

    signature: Signature
    domains: Mapping[Sort, Carrier]
    funs: Mapping[str, Callable[..., Any]]
    preds: Mapping[str, Callable[..., Any]]
    assignment: Mapping[Var, Any] = field(default_factory=dict)
    total: bool = False

    def domain(self, sort: Sort) -> Carrier:
        return self.domains[sort]

    def assign(self, mapping: Mapping[Var, Any]) -> "Interpretation":
        return replace(self, assignment={**self.assignment, **mapping})

    def value_of(self, v: Var, assignment: Mapping[Var, Any] | None = None):
        a = self.assignment if assignment is None else assignment
        if v in a:
            return a[v]
        if self.total:
            return self.domains[v.sort].first()
        raise UnassignedVariable(v)

    def is_finite(self, sorts: Iterable[Sort] | None = None) -> bool:
        sorts = self.domains if sorts is None else sorts
        return all(self.domains[s].finite for s in sorts)


def eval_term(M: Interpretation, t: Term, assignment: Mapping[Var, Any] | None = None):
    a = M.assignment if assignment is None else assignment
    if isinstance(t, Var):
        return M.value_of(t, a)
    return M.funs[t.fun.name](*(eval_term(M, x, a) for x in t.args))


def eval_formula(
    M: Interpretation,
    phi: Formula,
    budget: int = DEFAULT_BUDGET,
    assignment: Mapping[Var, Any] | None = None,
) -> TruthValue:
    """Tarskian evaluation; quantifiers over generator carriers look at ``budget`` elements."""
    a = dict(M.assignment if assignment is None else assignment)
    return _ev(M, phi, a, budget)


def _ev(M: Interpretation, phi: Formula, a: dict, budget: int) -> TruthValue:
    match phi:
        case Bot():
            return FALSE
        case Top():
            return TRUE
        case Pred(p, args):
            return _tv(M.preds[p.name](*(eval_term(M, t, a) for t in args)))
        case Eq(_, l, r):
            return TruthValue.of(eval_term(M, l, a) == eval_term(M, r, a))
        case Not(x):
            return ~_ev(M, x, a, budget)
        case Or(x, y):
            left = _ev(M, x, a, budget)
            return left if left is TRUE else left | _ev(M, y, a, budget)
        case And(x, y):
            left = _ev(M, x, a, budget)
            return left if left is FALSE else left & _ev(M, y, a, budget)
        case Implies(x, y):
            left = ~_ev(M, x, a, budget)
            return left if left is TRUE else left | _ev(M, y, a, budget)
        case Iff(x, y):
            l, r = _ev(M, x, a, budget), _ev(M, y, a, budget)
            if UNKNOWN in (l, r):
                return UNKNOWN
            return TruthValue.of(l is r)
        case Forall(v, body):
            return _quant(M, v, body, a, budget, universal=True)
        case Exists(v, body):
            return _quant(M, v, body, a, budget, universal=False)
    raise TypeError(f"not a formula: {phi!r}")


def _quant(M, v, body, a, budget, universal: bool) -> TruthValue:
    carrier = M.domains[v.sort]
    elements: Iterable = carrier if carrier.finite else islice(carrier, budget)
    stop = FALSE if universal else TRUE
    had = v in a
    old = a.get(v)
    result = ~stop if carrier.finite else UNKNOWN
    try:
        for d in elements:
            a[v] = d
            r = _ev(M, body, a, budget)
            if r is stop:
                return stop
            if r is UNKNOWN:
                result = UNKNOWN
    finally:
        if had:
            a[v] = old
        else:
            a.pop(v, None)
    return result


def finite_interpretation(
    sig: Signature,
    carriers: Mapping[Sort, Iterable[Any]],
    funs: Mapping[str, Mapping[tuple, Any] | Callable],
    preds: Mapping[str, Iterable[tuple] | Callable],
    assignment: Mapping[Var, Any] | None = None,
) -> Interpretation:
    """Build a finite interpretation from tables.

    Function tables map argument tuples to values; predicate tables are sets
    of argument tuples.  Callables are used as given.
    """
    fm: dict[str, Callable] = {}
    for f in sig.funs:
        tab = funs[f.name]
        if callable(tab):
            fm[f.name] = tab
        else:
            fm[f.name] = (lambda t: lambda *xs: t[xs])(dict(tab))
    pm: dict[str, Callable] = {}
    for p in sig.preds:
        rel = preds[p.name]
        if callable(rel):
            pm[p.name] = rel
        else:
            pm[p.name] = (lambda r: lambda *xs: xs in r)(frozenset(tuple(x) for x in rel))
    return Interpretation(
        sig,
        {s: FiniteCarrier(carriers[s]) for s in sig.sorts},
        fm,
        pm,
        dict(assignment or {}),
    )


# -- the standard generator model for nat and lst ----------------------------


def naturals() -> Iterator[int]:
    return count()


def lists_of_weight(w: int) -> Iterator[tuple[int, ...]]:
    """Lists whose length plus element sum is ``w``."""
    if w == 0:
        yield ()
        return
    for head in range(w):
        for tail in lists_of_weight(w - 1 - head):
            yield (head,) + tail


def nat_lists() -> Iterator[tuple[int, ...]]:
    for w in count():
        yield from lists_of_weight(w)


def _is_nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def _is_lst(x) -> bool:
    return isinstance(x, tuple) and all(_is_nat(y) for y in x)


STANDARD_CARRIERS = {
    "nat": lambda: GeneratorCarrier(naturals, _is_nat, "nat"),
    "lst": lambda: GeneratorCarrier(nat_lists, _is_lst, "lst"),
}


def _rev_acc(x, acc):
    return tuple(reversed(x)) + acc


STANDARD_FUNS: dict[str, Callable] = {
    "zero": lambda: 0,
    "s": lambda n: n + 1,
    "add": lambda x, y: x + y,
    "mul": lambda x, y: x * y,
    "id": lambda x: x,
    "nil": lambda: (),
    "cons": lambda a, l: (a,) + l,
    "app": lambda l, r: l + r,
    "rev": lambda l: tuple(reversed(l)),
    "rev'": lambda l: tuple(reversed(l)),
    "revAcc": _rev_acc,
}

STANDARD_PREDS: dict[str, Callable] = {
    "leq": lambda x, y: x <= y,
    "pref": lambda x, y: y[: len(x)] == x,
    "equal": lambda x, y, z: x == y == z,
}


def standard_model(sig: Signature) -> Interpretation:
    """Natural numbers and finite lists of naturals with their usual operations."""
    domains = {}
    for s in sig.sorts:
        if s.name not in STANDARD_CARRIERS:
            raise MissingSymbol(f"no standard carrier for sort {s.name!r}")
        domains[s] = STANDARD_CARRIERS[s.name]()
    funs, preds = {}, {}
    for f in sig.funs:
        if f.name not in STANDARD_FUNS:
            raise MissingSymbol(f"no standard meaning for {f.name!r}")
        funs[f.name] = STANDARD_FUNS[f.name]
    for p in sig.preds:
        if p.name not in STANDARD_PREDS:
            raise MissingSymbol(f"no standard meaning for {p.name!r}")
        preds[p.name] = STANDARD_PREDS[p.name]
    return Interpretation(sig, domains, funs, preds)


# -- environments ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Empty:
    def __repr__(self) -> str:
        return "empty"


@dataclass(frozen=True, slots=True)
class Push:
    prev: "EnvValue"
    var: Var
    value: Any

    def __repr__(self) -> str:
        return f"push({self.prev!r}, x{self.var.index}:{self.var.sort}, {self.value!r})"


EnvValue = Empty | Push
EMPTY = Empty()


def env_frames(e: EnvValue) -> list[Push]:
    """Frames from the bottom of the stack to the top."""
    out = []
    while isinstance(e, Push):
        out.append(e)
        e = e.prev
    return out[::-1]


def env_lookup(e: EnvValue, v: Var, bottom: Callable[[Var], Any]):
    while isinstance(e, Push):
        if e.var == v:
            return e.value
        e = e.prev
    return bottom(v)


def env_overlay(e: EnvValue, base: Mapping[Var, Any]) -> dict[Var, Any]:
    out = dict(base)
    for fr in env_frames(e):
        out[fr.var] = fr.value
    return out


def env_well_formed(e: EnvValue, M: Interpretation) -> bool:
    """Every frame binds a variable of a base sort to an element of its carrier."""
    if not isinstance(e, (Empty, Push)):
        return False
    for fr in env_frames(e):
        if not isinstance(fr.var, Var) or fr.var.sort not in M.domains:
            return False
        if fr.value not in M.domains[fr.var.sort]:
            return False
    return True


def push_all(e: EnvValue, frames: Iterable[tuple[Var, Any]]) -> EnvValue:
    for v, d in frames:
        e = Push(e, v, d)
    return e


# -- the reflective model ----------------------------------------------------


@lru_cache(maxsize=64)
def _rmap_for(sig: Signature) -> ReflectionMap:
    return reflect_signature(sig)


def _layered(make: Callable[[int], Iterable[Any]]) -> Callable[[], Iterator[Any]]:
    """Fair enumeration of the union of growing finite layers."""

    def gen():
        seen: set = set()
        for n in count():
            for x in make(n):
                if x not in seen:
                    seen.add(x)
                    yield x

    return gen


def _var_is(sort: Sort):
    return lambda x: isinstance(x, Var) and x.sort == sort and x.index >= 0


def reflective_model(
    M: Interpretation,
    rmap: ReflectionMap | None = None,
    pools: Mapping[Sort, Iterable[Any]] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Interpretation:
    """The reflective interpretation built from ``M``.

    Variable, term and formula sorts are carried by actual syntax, ``env`` by
    :class:`EnvValue` stacks, and ``empty`` denotes ``M``'s own (total)
    assignment.  ``eval``/``evalv``/``models`` are meta-level evaluation in
    ``M`` under the environment overlay.  ``pools`` replaces the carrier of
    a reflective sort by a finite set, which makes quantification over that
    sort exact on the pool.
    """
    from .enumerate import enumerate_formulas, enumerate_terms_upto

    rmap = rmap or _rmap_for(M.signature)
    base_sig = rmap.base
    Mt = replace(M, total=True)
    base_assign = dict(M.assignment)
    pools = dict(pools or {})

    def bottom(v: Var):
        return Mt.value_of(v, base_assign)

    domains: dict[Sort, Carrier] = dict(M.domains)
    for s in base_sig.sorts:
        vs, ts = rmap.var_sort[s], rmap.term_sort[s]
        domains[vs] = GeneratorCarrier(
            (lambda s=s: (Var(i, s) for i in count())), _var_is(s), vs.name
        )
        domains[ts] = GeneratorCarrier(
            _layered(lambda n, s=s: enumerate_terms_upto(base_sig, s, n, [Var(i, t) for t in base_sig.sorts for i in range(n)])),
            lambda x, s=s: _is_term_of(base_sig, x, s),
            ts.name,
        )
    domains[rmap.form] = GeneratorCarrier(
        _layered(lambda n: enumerate_formulas(base_sig, n, n, term_depth=n, free=[Var(i, t) for t in base_sig.sorts for i in range(n)])),
        lambda x: _is_formula_of(base_sig, x),
        "form",
    )
    domains[rmap.env] = GeneratorCarrier(
        _layered(lambda n: _envs(M, n)),
        lambda x: env_well_formed(x, M),
        "env",
    )
    for s, elems in pools.items():
        domains[s] = FiniteCarrier(elems)

    funs: dict[str, Callable] = dict(M.funs)
    for s in base_sig.sorts:
        funs[rmap.v0[s].name] = lambda s=s: Var(0, s)
        funs[rmap.next[s].name] = lambda v: Var(v.index + 1, v.sort)
        funs[rmap.inj[s].name] = lambda v: v
        funs[rmap.eqdot[s].name] = lambda a, b, s=s: Eq(s, a, b)
        funs[rmap.forall[s].name] = lambda v, phi: Forall(v, phi)
        funs[rmap.push[s].name] = lambda e, v, d: Push(e, v, d)
        funs[rmap.evalv[s].name] = lambda e, v: env_lookup(e, v, bottom)
        funs[rmap.eval[s].name] = lambda e, t: eval_term(Mt, t, env_overlay(e, base_assign))
    for f, d in rmap.dotted_funs.items():
        funs[d.name] = lambda *ts, f=f: App(f, tuple(ts))
    for p, d in rmap.dotted_preds.items():
        funs[d.name] = lambda *ts, p=p: Pred(p, tuple(ts))
    funs[rmap.botdot.name] = lambda: BOT
    funs[rmap.ordot.name] = lambda a, b: Or(a, b)
    funs[rmap.negdot.name] = lambda a: Not(a)
    funs[rmap.empty.name] = lambda: EMPTY

    preds: dict[str, Callable] = dict(M.preds)
    preds[rmap.models.name] = lambda e, phi: eval_formula(Mt, phi, budget, env_overlay(e, base_assign))
    return Interpretation(rmap.signature, domains, funs, preds, {}, total=True)


def _envs(M: Interpretation, n: int) -> Iterator[EnvValue]:
    vars_ = [Var(i, s) for s in M.signature.sorts for i in range(n)]
    vals = {s: list(islice(iter(M.domains[s]), n)) for s in M.signature.sorts}
    frames = [(v, d) for v in vars_ for d in vals[v.sort]]
    for length in range(n + 1):
        for combo in product(frames, repeat=length):
            yield push_all(EMPTY, combo)


def _is_term_of(sig: Signature, x, sort: Sort) -> bool:
    if not isinstance(x, (Var, App)):
        return False
    try:
        return check_term(sig, x) == sort
    except Exception:
        return False


def _is_formula_of(sig: Signature, x) -> bool:
    from ..logic import check_formula, is_core

    try:
        check_formula(sig, x)
    except Exception:
        return False
    return is_core(x)


# -- truth predicate -------------------------------------------------------


def truth_atom(rmap: ReflectionMap, phi: Formula) -> Formula:
    """``empty |= code(normalize(phi))``."""
    return Pred(rmap.models, (App(rmap.empty), godel_encode(normalize(phi), rmap)))


def check_truth_predicate(M: Interpretation, phi: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether ``phi`` and ``empty |= code(phi)`` get the same value.

    The left side is evaluated in ``M``, the right side in the reflective
    model of ``M``.  Raises :class:`Undecided` when either side is unknown.
    """
    rmap = _rmap_for(M.signature)
    direct = eval_formula(M, phi, budget)
    reflected = eval_formula(reflective_model(M, rmap, budget=budget), truth_atom(rmap, phi), budget)
    if not (direct.definite and reflected.definite):
        raise Undecided(f"direct={direct.value}, reflected={reflected.value}")
    return direct is reflected


__all__ = [
    "TruthValue",
    "TRUE",
    "FALSE",
    "UNKNOWN",
    "FiniteCarrier",
    "GeneratorCarrier",
    "Interpretation",
    "eval_term",
    "eval_formula",
    "finite_interpretation",
    "standard_model",
    "Empty",
    "Push",
    "EMPTY",
    "EnvValue",
    "env_lookup",
    "env_well_formed",
    "reflective_model",
    "check_truth_predicate",
    "truth_atom",
]
