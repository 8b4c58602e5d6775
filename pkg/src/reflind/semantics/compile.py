"""Compilation of formulas and formula codes to flat integer programs.

Finite models over a base signature are packed into one int vector each:
every function and predicate owns a table laid out in mixed radix over its
argument sorts.  Elements of a sort of size ``n`` are ``0 .. n-1``, and ``0``
doubles as the default value of an unassigned variable (the first element
of the carrier).

Program layout (one int per cell):

====  ===========================================  =====================
op    cells                                        meaning
====  ===========================================  =====================
0     ``BOT``                                      false
1     ``NOT a``                                    negation
2     ``OR size(a) a b``                           disjunction
3     ``FORALL slot sort body``                    quantifier on a slot
4     ``PRED off n m1..mn t1..tn``                 atom
5     ``EQ t1 t2``                                 equation
6     ``VAR slot``                                 variable value
7     ``APP off n m1..mn t1..tn``                  function value
8     ``CFORALL sort index body``                  push a frame per value
9     ``CVAR sort index``                          environment lookup
====  ===========================================  =====================

Ops 0-7 come from :func:`compile_direct`; :func:`compile_code` walks a
Gödel code and emits 8/9 for binders and variable occurrences, so the code
route resolves variables through an explicit environment stack exactly as
``evalv`` does on ``push`` chains, bottoming out in the default value the
way ``empty`` denotes the model's own assignment.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from ..errors import NotInImage, UnsupportedFeature
from ..logic import App, Bot, Eq, Forall, Formula, Not, Or, Pred, Signature, Sort, Term, Var
from ..reflection import ReflectionMap, decode_var

BOT, NOT, OR, FORALL, PRED, EQ, VAR, APP, CFORALL, CVAR = range(10)


@dataclass(frozen=True)
class Layout:
    """Sizes of the base sorts and the table offsets of every symbol."""

    signature: Signature
    sorts: tuple[Sort, ...]
    sizes: tuple[int, ...]
    offsets: Mapping[str, int]
    mults: Mapping[str, tuple[int, ...]]
    cells: Mapping[str, int]
    stride: int

    @classmethod
    def of(cls, sig: Signature, sizes: Mapping[Sort | str, int] | int) -> "Layout":
        sorts = tuple(sig.sorts)
        if isinstance(sizes, int):
            sizes = {s: sizes for s in sorts}
        sizes = {s: sizes[s] if s in sizes else sizes[s.name] for s in sorts}
        sz = tuple(sizes[s] for s in sorts)
        if any(n < 1 for n in sz):
            raise ValueError("carriers must be nonempty")
        offsets: dict[str, int] = {}
        mults: dict[str, tuple[int, ...]] = {}
        cells: dict[str, int] = {}
        off = 0
        for sym in (*sig.funs, *sig.preds):
            dims = [sizes[s] for s in sym.domain]
            m = []
            acc = 1
            for n in reversed(dims):
                m.append(acc)
                acc *= n
            offsets[sym.name] = off
            mults[sym.name] = tuple(reversed(m))
            cells[sym.name] = acc
            off += acc
        return cls(sig, sorts, sz, offsets, mults, cells, off)

    def size(self, sort: Sort) -> int:
        return self.sizes[self.sorts.index(sort)]

    def sort_id(self, sort: Sort) -> int:
        return self.sorts.index(sort)

    def sizes_array(self) -> array:
        return array("i", self.sizes)


# -- models ------------------------------------------------------------------


def encode_model(layout: Layout, M) -> array:
    """Pack a finite :class:`Interpretation` whose carriers list ``0..n-1`` order."""
    out = array("i", [0]) * layout.stride
    index = {s: {d: k for k, d in enumerate(M.domains[s])} for s in layout.sorts}
    for s, n in zip(layout.sorts, layout.sizes):
        if len(index[s]) != n:
            raise ValueError(f"carrier of {s} has {len(index[s])} elements, layout expects {n}")
    for sym in (*layout.signature.funs, *layout.signature.preds):
        off = layout.offsets[sym.name]
        elems = [list(M.domains[s]) for s in sym.domain]
        is_fun = hasattr(sym, "codomain")
        for k, args in enumerate(product(*elems)):
            if is_fun:
                out[off + k] = index[sym.codomain][M.funs[sym.name](*args)]
            else:
                out[off + k] = 1 if M.preds[sym.name](*args) else 0
    return out


def decode_model(layout: Layout, vec: Sequence[int]):
    """The :class:`Interpretation` with carriers ``range(n)`` described by ``vec``."""
    from .model import finite_interpretation

    carriers = {s: range(n) for s, n in zip(layout.sorts, layout.sizes)}
    funs = {}
    preds = {}
    for f in layout.signature.funs:
        funs[f.name] = _table(layout, f, vec, None)
    for p in layout.signature.preds:
        preds[p.name] = _table(layout, p, vec, True)
    return finite_interpretation(layout.signature, carriers, funs, preds)


def _table(layout, sym, vec, as_bool):
    off = layout.offsets[sym.name]
    mult = layout.mults[sym.name]
    vals = tuple(vec[off : off + layout.cells[sym.name]])

    def f(*args):
        k = sum(m * a for m, a in zip(mult, args))
        return bool(vals[k]) if as_bool else vals[k]

    return f


def enumerate_models(layout: Layout) -> Iterator[array]:
    """Every packed model of the layout, varying the last table fastest."""
    ranges = []
    for f in layout.signature.funs:
        ranges += [range(layout.size(f.codomain))] * layout.cells[f.name]
    for p in layout.signature.preds:
        ranges += [range(2)] * layout.cells[p.name]
    for cells in product(*ranges):
        yield array("i", cells)


def count_models(layout: Layout) -> int:
    n = 1
    for f in layout.signature.funs:
        n *= layout.size(f.codomain) ** layout.cells[f.name]
    for p in layout.signature.preds:
        n *= 2 ** layout.cells[p.name]
    return n


def pack(models: Iterable[Sequence[int]]) -> array:
    out = array("i")
    for m in models:
        out.extend(m)
    return out


# -- programs ----------------------------------------------------------------


class _Slots:
    def __init__(self):
        self.map: dict[Var, int] = {}

    def __call__(self, v: Var) -> int:
        k = self.map.get(v)
        if k is None:
            k = self.map[v] = len(self.map)
        return k


def compile_direct(layout: Layout, phi: Formula, slots: _Slots | None = None) -> array:
    """Program for a core formula; free variables read slot default ``0``."""
    slots = slots or _Slots()
    out = array("i")
    _form(layout, phi, slots, out)
    return out


def _form(L: Layout, phi: Formula, slots, out: array) -> None:
    match phi:
        case Bot():
            out.append(BOT)
        case Not(a):
            out.append(NOT)
            _form(L, a, slots, out)
        case Or(a, b):
            out.extend((OR, 0))
            at = len(out)
            _form(L, a, slots, out)
            out[at - 1] = len(out) - at
            _form(L, b, slots, out)
        case Forall(v, body):
            out.extend((FORALL, slots(v), L.sort_id(v.sort)))
            _form(L, body, slots, out)
        case Pred(p, args):
            out.extend((PRED, L.offsets[p.name], len(args)))
            out.extend(L.mults[p.name])
            for t in args:
                _term(L, t, slots, out)
        case Eq(_, l, r):
            out.append(EQ)
            _term(L, l, slots, out)
            _term(L, r, slots, out)
        case _:
            raise UnsupportedFeature(f"{type(phi).__name__} is not core; normalize first")


def _term(L: Layout, t: Term, slots, out: array) -> None:
    if isinstance(t, Var):
        out.extend((VAR, slots(t)))
        return
    out.extend((APP, L.offsets[t.fun.name], len(t.args)))
    out.extend(L.mults[t.fun.name])
    for a in t.args:
        _term(L, a, slots, out)


def compile_code(layout: Layout, code: Term, rmap: ReflectionMap) -> array:
    """Program for a formula code, read through the reflective constructors."""
    out = array("i")
    _cform(layout, code, rmap, out)
    return out


def _cform(L: Layout, c: Term, rm: ReflectionMap, out: array) -> None:
    if not isinstance(c, App):
        raise NotInImage("codes are ground", c)
    role, what = rm.roles.get(c.fun.name, (None, None))
    if role == "botdot":
        out.append(BOT)
    elif role == "negdot":
        out.append(NOT)
        _cform(L, c.args[0], rm, out)
    elif role == "ordot":
        out.extend((OR, 0))
        at = len(out)
        _cform(L, c.args[0], rm, out)
        out[at - 1] = len(out) - at
        _cform(L, c.args[1], rm, out)
    elif role == "forall":
        v = decode_var(c.args[0], rm)
        out.extend((CFORALL, L.sort_id(what), v.index))
        _cform(L, c.args[1], rm, out)
    elif role == "pred":
        out.extend((PRED, L.offsets[what.name], len(c.args)))
        out.extend(L.mults[what.name])
        for a in c.args:
            _cterm(L, a, rm, out)
    elif role == "eqdot":
        out.append(EQ)
        _cterm(L, c.args[0], rm, out)
        _cterm(L, c.args[1], rm, out)
    else:
        raise NotInImage(f"{c.fun.name} is not a formula code constructor", c)


def _cterm(L: Layout, c: Term, rm: ReflectionMap, out: array) -> None:
    if not isinstance(c, App):
        raise NotInImage("codes are ground", c)
    role, what = rm.roles.get(c.fun.name, (None, None))
    if role == "inj":
        v = decode_var(c.args[0], rm)
        out.extend((CVAR, L.sort_id(what), v.index))
    elif role == "fun":
        out.extend((APP, L.offsets[what.name], len(c.args)))
        out.extend(L.mults[what.name])
        for a in c.args:
            _cterm(L, a, rm, out)
    else:
        raise NotInImage(f"{c.fun.name} is not a term code constructor", c)


def binder_depth(prog: Sequence[int]) -> int:
    """Upper bound on simultaneously live ``CFORALL`` frames: their count."""
    return sum(1 for _ in _ops(prog) if _ == CFORALL) or 1


def _ops(prog: Sequence[int]) -> Iterator[int]:
    # a linear walk that knows each op's fixed width
    i = 0
    n = len(prog)
    while i < n:
        op = prog[i]
        yield op
        if op in (BOT, NOT, EQ):
            i += 1
        elif op == OR:
            i += 2
        elif op in (FORALL, CFORALL, CVAR):
            i += 3
        elif op == VAR:
            i += 2
        elif op in (PRED, APP):
            i += 3 + prog[i + 2]
        else:
            raise ValueError(f"bad opcode {op} at {i}")


class Batch:
    """Many programs concatenated, with start offsets, for one kernel call."""

    def __init__(self):
        self.code = array("i")
        self.starts = array("i")
        self.slots = 1
        self.depth = 1

    def add(self, prog: array, slots: int = 0) -> None:
        self.starts.append(len(self.code))
        self.code.extend(prog)
        self.slots = max(self.slots, slots)
        self.depth = max(self.depth, binder_depth(prog))

    def __len__(self) -> int:
        return len(self.starts)


def direct_batch(layout: Layout, formulas: Iterable[Formula]) -> Batch:
    b = Batch()
    for phi in formulas:
        s = _Slots()
        b.add(compile_direct(layout, phi, s), len(s.map))
    return b


def code_batch(layout: Layout, codes: Iterable[Term], rmap: ReflectionMap) -> Batch:
    b = Batch()
    for c in codes:
        b.add(compile_code(layout, c, rmap))
    return b


__all__ = [
    "Layout",
    "Batch",
    "encode_model",
    "decode_model",
    "enumerate_models",
    "count_models",
    "pack",
    "compile_direct",
    "compile_code",
    "direct_batch",
    "code_batch",
]
