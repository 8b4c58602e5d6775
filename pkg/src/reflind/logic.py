"""Multi-sorted first-order syntax: sorts, symbols, terms, formulas, theories.

Variables are ``(index, sort)`` pairs.  Formulas carry the sugar connectives
(``And``, ``Implies``, ``Iff``, ``Exists``, ``Top``) so that theories can be
transcribed faithfully; :func:`normalize` removes them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    ArityMismatch,
    MissingSymbol,
    OpenAxiom,
    SortMismatch,
    TypeCheckError,
    UnknownSymbol,
)

BASE = "base"
VAR = "var"
TERM = "term"
FORM = "form"
ENV = "env"
SORT_KINDS = (BASE, VAR, TERM, FORM, ENV)


@dataclass(frozen=True, slots=True)
class Sort:
    name: str
    kind: str = BASE
    of: str | None = None  # base sort name for var/term sorts

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class FunSym:
    name: str
    domain: tuple[Sort, ...]
    codomain: Sort

    @property
    def arity(self) -> int:
        return len(self.domain)

    def __call__(self, *args: "Term") -> "App":
        return App(self, tuple(args))


@dataclass(frozen=True, slots=True)
class PredSym:
    name: str
    domain: tuple[Sort, ...]

    @property
    def arity(self) -> int:
        return len(self.domain)

    def __call__(self, *args: "Term") -> "Pred":
        return Pred(self, tuple(args))


# -- terms ------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Var:
    index: int
    sort: Sort


@dataclass(frozen=True, slots=True)
class App:
    fun: FunSym
    args: tuple["Term", ...] = ()


Term = Union[Var, App]


# -- formulas ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Pred:
    pred: PredSym
    args: tuple[Term, ...] = ()


@dataclass(frozen=True, slots=True)
class Eq:
    sort: Sort
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: Var
    body: "Formula"


Formula = Union[Bot, Top, Pred, Eq, Not, Or, And, Implies, Iff, Forall, Exists]

BOT = Bot()
TOP = Top()

BINARY = (Or, And, Implies, Iff)
QUANTIFIERS = (Forall, Exists)
SUGAR = (And, Implies, Iff, Exists, Top)


def sort_of(t: Term) -> Sort:
    if isinstance(t, Var):
        return t.sort
    return t.fun.codomain


def eq(lhs: Term, rhs: Term) -> Eq:
    """Equality atom with the sort taken from ``lhs``."""
    return Eq(sort_of(lhs), lhs, rhs)


def neq(lhs: Term, rhs: Term) -> Not:
    return Not(eq(lhs, rhs))


def conj(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``Top``."""
    out: Formula | None = None
    for f in formulas:
        out = f if out is None else And(out, f)
    return TOP if out is None else out


def forall_all(variables: Iterable[Var], body: Formula) -> Formula:
    """``forall v1 ... forall vn. body`` with ``v1`` outermost."""
    for v in reversed(list(variables)):
        body = Forall(v, body)
    return body


def closure(phi: Formula) -> Formula:
    """Universal closure over the free variables, ordered by (sort, index)."""
    free = sorted(free_vars(phi), key=lambda v: (v.sort.name, v.index))
    return forall_all(free, phi)


# -- traversal ---------------------------------------------------------------


def term_vars(t: Term) -> frozenset[Var]:
    if isinstance(t, Var):
        return frozenset((t,))
    out: set[Var] = set()
    stack = list(t.args)
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s)
        else:
            stack.extend(s.args)
    return frozenset(out)


def free_vars(phi: Formula | Term) -> frozenset[Var]:
    """Exact set of free variables of a formula or term."""
    if isinstance(phi, (Var, App)):
        return term_vars(phi)
    match phi:
        case Bot() | Top():
            return frozenset()
        case Pred(_, args):
            out: frozenset[Var] = frozenset()
            for a in args:
                out |= term_vars(a)
            return out
        case Eq(_, l, r):
            return term_vars(l) | term_vars(r)
        case Not(a):
            return free_vars(a)
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            return free_vars(a) | free_vars(b)
        case Forall(v, body) | Exists(v, body):
            return free_vars(body) - {v}
    raise TypeError(f"not a formula: {phi!r}")


def is_closed(phi: Formula) -> bool:
    return not free_vars(phi)


def all_vars(phi: Formula | Term) -> frozenset[Var]:
    """Free and bound variables."""
    if isinstance(phi, (Var, App)):
        return term_vars(phi)
    match phi:
        case Forall(v, body) | Exists(v, body):
            return all_vars(body) | {v}
        case Not(a):
            return all_vars(a)
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            return all_vars(a) | all_vars(b)
    return free_vars(phi)


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def atoms_terms(phi: Formula) -> Iterator[Term]:
    """Every term occurring directly as an atom argument."""
    match phi:
        case Pred(_, args):
            yield from args
        case Eq(_, l, r):
            yield l
            yield r
        case Not(a):
            yield from atoms_terms(a)
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            yield from atoms_terms(a)
            yield from atoms_terms(b)
        case Forall(_, body) | Exists(_, body):
            yield from atoms_terms(body)


def fun_symbols(phi: Formula) -> set[FunSym]:
    out: set[FunSym] = set()
    for t in atoms_terms(phi):
        for s in subterms(t):
            if isinstance(s, App):
                out.add(s.fun)
    return out


def pred_symbols(phi: Formula) -> set[PredSym]:
    match phi:
        case Pred(p, _):
            return {p}
        case Not(a) | Forall(_, a) | Exists(_, a):
            return pred_symbols(a)
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            return pred_symbols(a) | pred_symbols(b)
    return set()


def formula_depth(phi: Formula) -> int:
    """Connective/quantifier nesting depth; atoms have depth 0."""
    match phi:
        case Not(a) | Forall(_, a) | Exists(_, a):
            return 1 + formula_depth(a)
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            return 1 + max(formula_depth(a), formula_depth(b))
    return 0


def term_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


# -- normalization -----------------------------------------------------------


def normalize(phi: Formula) -> Formula:
    """Rewrite into the core connectives {bot, not, or, forall, =, P}."""
    match phi:
        case Bot() | Pred() | Eq():
            return phi
        case Top():
            return Not(BOT)
        case Not(a):
            return Not(normalize(a))
        case Or(a, b):
            return Or(normalize(a), normalize(b))
        case And(a, b):
            return Not(Or(Not(normalize(a)), Not(normalize(b))))
        case Implies(a, b):
            return Or(Not(normalize(a)), normalize(b))
        case Iff(a, b):
            return normalize(And(Implies(a, b), Implies(b, a)))
        case Forall(v, body):
            return Forall(v, normalize(body))
        case Exists(v, body):
            return Not(Forall(v, Not(normalize(body))))
    raise TypeError(f"not a formula: {phi!r}")


def is_core(phi: Formula) -> bool:
    match phi:
        case Bot() | Pred() | Eq():
            return True
        case Not(a) | Forall(_, a):
            return is_core(a)
        case Or(a, b):
            return is_core(a) and is_core(b)
    return False


# -- substitution ------------------------------------------------------------


def fresh_index(sort: Sort, avoid: Iterable[Var]) -> int:
    """Smallest index ``i`` such that ``Var(i, sort)`` is not in ``avoid``."""
    used = {v.index for v in avoid if v.sort == sort}
    i = 0
    while i in used:
        i += 1
    return i


def subst_term(t: Term, mapping: Mapping[Var, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t, t)
    if not t.args:
        return t
    return App(t.fun, tuple(subst_term(a, mapping) for a in t.args))


def subst_many(phi: Formula, mapping: Mapping[Var, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution.

    A bound variable that would capture a free variable of some substituted
    term is renamed to the smallest index of its sort that is fresh for the
    substituted terms and the quantifier body.
    """
    if not mapping:
        return phi
    match phi:
        case Bot() | Top():
            return phi
        case Pred(p, args):
            return Pred(p, tuple(subst_term(a, mapping) for a in args))
        case Eq(s, l, r):
            return Eq(s, subst_term(l, mapping), subst_term(r, mapping))
        case Not(a):
            return Not(subst_many(a, mapping))
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            return type(phi)(subst_many(a, mapping), subst_many(b, mapping))
        case Forall(v, body) | Exists(v, body):
            body_free = free_vars(body)
            inner = {x: t for x, t in mapping.items() if x != v and x in body_free}
            if not inner:
                return phi
            incoming: set[Var] = set()
            for t in inner.values():
                incoming |= term_vars(t)
            if v in incoming:
                avoid = incoming | body_free | set(inner)
                w = Var(fresh_index(v.sort, avoid), v.sort)
                inner[v] = w
                return type(phi)(w, subst_many(body, inner))
            return type(phi)(v, subst_many(body, inner))
    raise TypeError(f"not a formula: {phi!r}")


def substitute(phi: Formula, x: Var, t: Term) -> Formula:
    """``phi[x -> t]``; raises :class:`SortMismatch` on ill-sorted input."""
    if sort_of(t) != x.sort:
        raise SortMismatch(f"cannot substitute a {sort_of(t)} term for a {x.sort} variable")
    return subst_many(phi, {x: t})


def alpha_eq(a: Formula, b: Formula) -> bool:
    """Syntactic equality modulo renaming of bound variables."""
    return _alpha(a, b, {}, {}, 0)


def _alpha_term(s: Term, t: Term, ml: dict, mr: dict) -> bool:
    if isinstance(s, Var) or isinstance(t, Var):
        if not (isinstance(s, Var) and isinstance(t, Var)):
            return False
        ls, rs = ml.get(s), mr.get(t)
        if ls is None and rs is None:
            return s == t
        return ls == rs
    if s.fun != t.fun:
        return False
    return all(_alpha_term(x, y, ml, mr) for x, y in zip(s.args, t.args))


def _alpha(a: Formula, b: Formula, ml: dict, mr: dict, level: int) -> bool:
    if type(a) is not type(b):
        return False
    match a:
        case Bot() | Top():
            return True
        case Pred(p, args):
            return p == b.pred and all(_alpha_term(x, y, ml, mr) for x, y in zip(args, b.args))
        case Eq(s, l, r):
            return s == b.sort and _alpha_term(l, b.lhs, ml, mr) and _alpha_term(r, b.rhs, ml, mr)
        case Not(x):
            return _alpha(x, b.arg, ml, mr, level)
        case Or(x, y) | And(x, y) | Implies(x, y) | Iff(x, y):
            return _alpha(x, b.left, ml, mr, level) and _alpha(y, b.right, ml, mr, level)
        case Forall(v, body) | Exists(v, body):
            if v.sort != b.var.sort:
                return False
            nl = {**ml, v: level}
            nr = {**mr, b.var: level}
            return _alpha(body, b.body, nl, nr, level + 1)
    raise TypeError(f"not a formula: {a!r}")


# -- signatures and theories -------------------------------------------------


@dataclass(frozen=True)
class Signature:
    sorts: tuple[Sort, ...] = ()
    funs: tuple[FunSym, ...] = ()
    preds: tuple[PredSym, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {
            "sort": {s.name: s for s in self.sorts},
            "fun": {f.name: f for f in self.funs},
            "pred": {p.name: p for p in self.preds},
        }
        object.__setattr__(self, "_index", index)

    def sort(self, name: str) -> Sort:
        try:
            return self._index["sort"][name]
        except KeyError:
            raise UnknownSymbol(f"unknown sort {name!r}") from None

    def fun(self, name: str) -> FunSym:
        try:
            return self._index["fun"][name]
        except KeyError:
            raise UnknownSymbol(f"unknown function {name!r}") from None

    def pred(self, name: str) -> PredSym:
        try:
            return self._index["pred"][name]
        except KeyError:
            raise UnknownSymbol(f"unknown predicate {name!r}") from None

    def has_sort(self, name: str) -> bool:
        return name in self._index["sort"]

    def has_fun(self, name: str) -> bool:
        return name in self._index["fun"]

    def has_pred(self, name: str) -> bool:
        return name in self._index["pred"]

    def names(self) -> set[str]:
        out = {s.name for s in self.sorts}
        out.update(f.name for f in self.funs)
        out.update(p.name for p in self.preds)
        return out

    def symbol_names(self) -> set[str]:
        return {f.name for f in self.funs} | {p.name for p in self.preds}

    def extend(self, sorts=(), funs=(), preds=()) -> "Signature":
        """Union with duplicate-name rejection."""
        from .errors import NameCollision

        new = Signature(self.sorts + tuple(sorts), self.funs + tuple(funs), self.preds + tuple(preds))
        for group in (new.sorts, new.funs + new.preds):
            seen: set[str] = set()
            for s in group:
                if s.name in seen:
                    raise NameCollision(f"duplicate declaration of {s.name!r}")
                seen.add(s.name)
        return new

    def base_sorts(self) -> tuple[Sort, ...]:
        return tuple(s for s in self.sorts if s.kind == BASE)


@dataclass(frozen=True, slots=True)
class InductiveDatatype:
    sort: Sort
    ctors: tuple[FunSym, ...]

    def __post_init__(self):
        if not self.ctors:
            raise ValueError(f"datatype {self.sort} has no constructors")
        for c in self.ctors:
            if c.codomain != self.sort:
                raise SortMismatch(f"constructor {c.name} does not build {self.sort}")

    def recursive_positions(self, ctor: FunSym) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(ctor.domain) if s == self.sort)


REFLECTIVE = "reflective"
REFLECTIVE_INDUCTIVE = "reflective-inductive"


@dataclass(frozen=True)
class Theory:
    name: str
    signature: Signature
    datatypes: tuple[InductiveDatatype, ...] = ()
    axioms: tuple[Formula, ...] = ()
    reflection: str | None = None  # marker against nesting the construction

    def with_axioms(self, extra: Iterable[Formula]) -> "Theory":
        return replace(self, axioms=self.axioms + tuple(extra))

    def datatype(self, sort: Sort) -> InductiveDatatype | None:
        for d in self.datatypes:
            if d.sort == sort:
                return d
        return None


# -- typechecking ------------------------------------------------------------


def check_term(sig: Signature, t: Term, axiom=None, path=()) -> Sort:
    """Return the sort of ``t`` after checking every application against ``sig``."""
    if isinstance(t, Var):
        if t.index < 0:
            raise TypeCheckError(f"negative variable index {t.index}", axiom, path)
        if not sig.has_sort(t.sort.name) or sig.sort(t.sort.name) != t.sort:
            raise UnknownSymbol(f"unknown sort {t.sort.name!r}", axiom, path)
        return t.sort
    f = t.fun
    if not sig.has_fun(f.name) or sig.fun(f.name) != f:
        raise UnknownSymbol(f"unknown function {f.name!r}", axiom, path)
    if len(t.args) != f.arity:
        raise ArityMismatch(f"{f.name} expects {f.arity} arguments, got {len(t.args)}", axiom, path)
    for i, (a, expected) in enumerate(zip(t.args, f.domain)):
        got = check_term(sig, a, axiom, path + (i,))
        if got != expected:
            raise SortMismatch(
                f"argument {i} of {f.name} has sort {got}, expected {expected}", axiom, path + (i,)
            )
    return f.codomain


def check_formula(sig: Signature, phi: Formula, axiom=None, path=()) -> None:
    match phi:
        case Bot() | Top():
            return
        case Pred(p, args):
            if not sig.has_pred(p.name) or sig.pred(p.name) != p:
                raise UnknownSymbol(f"unknown predicate {p.name!r}", axiom, path)
            if len(args) != p.arity:
                raise ArityMismatch(f"{p.name} expects {p.arity} arguments, got {len(args)}", axiom, path)
            for i, (a, expected) in enumerate(zip(args, p.domain)):
                got = check_term(sig, a, axiom, path + (i,))
                if got != expected:
                    raise SortMismatch(
                        f"argument {i} of {p.name} has sort {got}, expected {expected}",
                        axiom,
                        path + (i,),
                    )
        case Eq(s, l, r):
            for i, side in enumerate((l, r)):
                got = check_term(sig, side, axiom, path + (i,))
                if got != s:
                    raise SortMismatch(f"equation side {i} has sort {got}, expected {s}", axiom, path + (i,))
        case Not(a):
            check_formula(sig, a, axiom, path + (0,))
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            check_formula(sig, a, axiom, path + (0,))
            check_formula(sig, b, axiom, path + (1,))
        case Forall(v, body) | Exists(v, body):
            check_term(sig, v, axiom, path)
            check_formula(sig, body, axiom, path + (0,))
        case _:
            raise TypeCheckError(f"not a formula: {phi!r}", axiom, path)


def check_signature(sig: Signature) -> None:
    for f in sig.funs:
        for s in f.domain + (f.codomain,):
            if not sig.has_sort(s.name) or sig.sort(s.name) != s:
                raise UnknownSymbol(f"function {f.name} uses undeclared sort {s.name!r}")
    for p in sig.preds:
        for s in p.domain:
            if not sig.has_sort(s.name) or sig.sort(s.name) != s:
                raise UnknownSymbol(f"predicate {p.name} uses undeclared sort {s.name!r}")
    for s in sig.sorts:
        if s.kind not in SORT_KINDS:
            raise TypeCheckError(f"sort {s.name} has unknown kind {s.kind!r}")
        if s.kind in (VAR, TERM):
            if not sig.has_sort(s.of or "") or sig.sort(s.of).kind != BASE:
                raise TypeCheckError(f"sort {s.name} refers to a missing base sort {s.of!r}")


def typecheck(theory: Theory) -> None:
    """Raise a :class:`TypeCheckError` subclass unless ``theory`` is well-formed."""
    sig = theory.signature
    check_signature(sig)
    for d in theory.datatypes:
        if not sig.has_sort(d.sort.name):
            raise UnknownSymbol(f"datatype sort {d.sort.name!r} is not declared")
        for c in d.ctors:
            if not sig.has_fun(c.name) or sig.fun(c.name) != c:
                raise UnknownSymbol(f"constructor {c.name!r} is not declared")
    for i, ax in enumerate(theory.axioms):
        check_formula(sig, ax, axiom=i)
        free = free_vars(ax)
        if free:
            names = ", ".join(f"x{v.index}:{v.sort}" for v in sorted(free, key=lambda v: (v.sort.name, v.index)))
            raise OpenAxiom(f"axiom has free variables {names}", axiom=i)


# -- numerals ----------------------------------------------------------------


def numeral(n: int, sig: Signature) -> Term:
    """``s(...s(zero))`` with ``n`` applications of ``s``."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    if not (sig.has_fun("zero") and sig.has_fun("s")):
        raise MissingSymbol("numerals need zero :: nat and s :: nat -> nat")
    zero, succ = sig.fun("zero"), sig.fun("s")
    if zero.arity != 0 or succ.domain != (zero.codomain,) or succ.codomain != zero.codomain:
        raise MissingSymbol("zero/s do not have the profile of natural-number constructors")
    t: Term = App(zero)
    for _ in range(n):
        t = App(succ, (t,))
    return t


# -- display -----------------------------------------------------------------


def show_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if not t.args:
        return t.fun.name
    return f"{t.fun.name}({', '.join(show_term(a) for a in t.args)})"


def show(phi: Formula | Term) -> str:
    """Compact human-readable rendering, used in messages and reprs."""
    if isinstance(phi, (Var, App)):
        return show_term(phi)
    match phi:
        case Bot():
            return "false"
        case Top():
            return "true"
        case Pred(p, args):
            return p.name if not args else f"{p.name}({', '.join(show_term(a) for a in args)})"
        case Eq(_, l, r):
            return f"{show_term(l)} = {show_term(r)}"
        case Not(a):
            return f"~{_paren(a)}"
        case Or(a, b):
            return f"({show(a)} | {show(b)})"
        case And(a, b):
            return f"({show(a)} & {show(b)})"
        case Implies(a, b):
            return f"({show(a)} -> {show(b)})"
        case Iff(a, b):
            return f"({show(a)} <-> {show(b)})"
        case Forall(v, body):
            return f"(forall x{v.index}:{v.sort}. {show(body)})"
        case Exists(v, body):
            return f"(exists x{v.index}:{v.sort}. {show(body)})"
    return repr(phi)


def _paren(a: Formula) -> str:
    s = show(a)
    return s if isinstance(a, (Pred, Bot, Top, Not)) or s.startswith("(") else f"({s})"
