"""Theory catalog and the three benchmark suites.

Catalog fragments are written in the surface format and parsed, so a
built-in theory and the same text read from a file are the same object.
Combinations such as ``"N+L+App"`` concatenate fragment texts; a fragment's
prerequisites (``Add`` needs ``N``, ``App`` needs ``L``) are pulled in
ahead of it when missing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .errors import UnknownTheory
from .induction import reflective_inductive_extension
from .logic import (
    REFLECTIVE,
    REFLECTIVE_INDUCTIVE,
    Forall,
    Formula,
    Pred,
    Theory,
    Var,
    free_vars,
    normalize,
    subst_many,
)
from .reflection import godel_encode, recover_map, reflective_extension
from .serialize.surface import parse_document, parse_formula

DIRECT = "direct"
MODES = (DIRECT, REFLECTIVE, REFLECTIVE_INDUCTIVE)

AXIOM_REFLECTION = "axiom-reflection"
CONSEQUENCE = "consequence"
INDUCTIVE = "inductive"

FRAGMENTS: dict[str, str] = {
    "N": """
data nat = zero | s(nat).
""",
    "Leq": """
pred leq: nat nat.
axiom forall x:nat. leq(x, x).
axiom forall x:nat, y:nat. (leq(x, y) -> leq(x, s(y))).
""",
    "Add": """
fun add: nat nat -> nat.
axiom forall y:nat. add(zero, y) = y.
axiom forall x:nat, y:nat. add(s(x), y) = s(add(x, y)).
""",
    "Mul": """
fun mul: nat nat -> nat.
axiom forall y:nat. mul(zero, y) = zero.
axiom forall x:nat, y:nat. mul(s(x), y) = add(y, mul(x, y)).
""",
    "L": """
data lst = nil | cons(nat, lst).
""",
    "Pref": """
pred pref: lst lst.
axiom forall x:lst. pref(nil, x).
axiom forall a:nat, x:lst. ~pref(cons(a, x), nil).
axiom forall a:nat, b:nat, x:lst, y:lst. (pref(cons(a, x), cons(b, y)) <-> (a = b & pref(x, y))).
""",
    "App": """
fun app: lst lst -> lst.
axiom forall r:lst. app(nil, r) = r.
axiom forall a:nat, l:lst, r:lst. app(cons(a, l), r) = cons(a, app(l, r)).
""",
    "E": """
sort alpha.
fun a: -> alpha.
fun b: -> alpha.
fun c: -> alpha.
pred p: alpha.
pred q: alpha.
pred r: alpha.
""",
    "Id": """
fun id: nat -> nat.
axiom forall x:nat. id(x) = x.
""",
    "Eq": """
pred equal: nat nat nat.
axiom (equal(zero, zero, zero) <-> true).
axiom forall y:nat, z:nat. (equal(zero, s(y), z) <-> false).
axiom forall y:nat, z:nat. (equal(zero, y, s(z)) <-> false).
axiom forall x:nat, z:nat. (equal(s(x), zero, z) <-> false).
axiom forall x:nat, y:nat. (equal(s(x), y, zero) <-> false).
axiom forall x:nat, y:nat, z:nat. (equal(s(x), s(y), s(z)) <-> equal(x, y, z)).
""",
    "Rev": """
fun rev: lst -> lst.
axiom rev(nil) = nil.
axiom forall x:nat, xs:lst. rev(cons(x, xs)) = app(rev(xs), cons(x, nil)).
""",
    "Rev'": """
fun rev': lst -> lst.
fun revAcc: lst lst -> lst.
axiom forall x:lst. rev'(x) = revAcc(x, nil).
axiom forall acc:lst. revAcc(nil, acc) = acc.
axiom forall acc:lst, x:nat, xs:lst. revAcc(cons(x, xs), acc) = revAcc(xs, cons(x, acc)).
""",
}

REQUIRES: dict[str, tuple[str, ...]] = {
    "N": (),
    "Leq": ("N",),
    "Add": ("N",),
    "Mul": ("N", "Add"),
    "L": ("N",),
    "Pref": ("N", "L"),
    "App": ("N", "L"),
    "E": (),
    "Id": ("N",),
    "Eq": ("N",),
    "Rev": ("N", "L", "App"),
    "Rev'": ("N", "L"),
}


def fragment_names(name: str) -> list[str]:
    """The fragments of a combination in load order, prerequisites first."""
    parts = [p.strip() for p in name.split("+")]
    out: list[str] = []

    def add(p: str) -> None:
        if p not in FRAGMENTS:
            raise UnknownTheory(f"unknown theory fragment {p!r}")
        for dep in REQUIRES[p]:
            if dep not in out:
                add(dep)
        if p not in out:
            out.append(p)

    for p in parts:
        add(p)
    return out


def theory_text(name: str) -> str:
    parts = fragment_names(name)
    return f'meta name "{name}".\n' + "".join(FRAGMENTS[p].lstrip("\n") for p in parts)


@lru_cache(maxsize=None)
def builtin_theory(name: str) -> Theory:
    """A Table-style catalog theory or ``+``-combination, e.g. ``"N+L+App"``."""
    return parse_document(theory_text(name)).theory


CATALOG_COMBINATIONS = (
    "E",
    "N+Add",
    "N+Add+Mul",
    "N+L+App",
    "N+Leq",
    "N+Leq+Add",
    "N+Add+Id",
    "N+L+Pref+App",
    "N+Eq",
    "N+L+App+Rev",
    "N+L+App+Rev+Rev'",
    "N+Leq+Add+Mul",
)


@dataclass(frozen=True)
class ProblemInstance:
    id: str
    suite: str
    theory: Theory
    conjecture: Formula
    mode: str
    role: str
    base: str  # catalog name of the base theory

    @property
    def meta(self) -> dict[str, str]:
        return {"id": self.id, "suite": self.suite, "mode": self.mode, "role": self.role, "base": self.base}


# -- Refl0 ------------------------------------------------------------------

REFL0_THEORIES = ("N+Leq+Add+Mul", "N+L+Pref+App")


@lru_cache(maxsize=None)
def _reflective(name: str) -> Theory:
    return reflective_extension(builtin_theory(name))


@lru_cache(maxsize=None)
def _reflective_inductive(name: str) -> Theory:
    return reflective_inductive_extension(builtin_theory(name))


def truth_statement(theory: Theory, phi: Formula) -> Formula:
    """``empty |= code(normalize(phi))`` in the reflective extension ``theory``."""
    rmap = recover_map(theory)
    from .logic import App

    return Pred(rmap.models, (App(rmap.empty), godel_encode(normalize(phi), rmap)))


def gen_refl0() -> list[ProblemInstance]:
    out = []
    for name in REFL0_THEORIES:
        base = builtin_theory(name)
        th = _reflective(name)
        for i, ax in enumerate(base.axioms):
            out.append(
                ProblemInstance(f"{name}-ax{i}", "refl0", th, truth_statement(th, ax), REFLECTIVE, AXIOM_REFLECTION, name)
            )
    return out


# -- Refl1 ------------------------------------------------------------------

REFL1: tuple[tuple[str, str, str], ...] = (
    ("eqRefl", "E", "forall x:alpha. x = x"),
    ("eqTrans", "E", "forall x:alpha, y:alpha, z:alpha. ((x = y & y = z) -> x = z)"),
    ("excludedMiddle-0", "E", "p(a) | ~p(a)"),
    ("excludedMiddle-1", "E", "forall x:alpha. (p(x) | ~p(x))"),
    ("universalInstance", "E", "(forall x:alpha. p(x)) -> p(a)"),
    ("contraposition-0", "E", "(p(a) -> q(b)) <-> (~q(b) -> ~p(a))"),
    ("contraposition-1", "E", "forall x:alpha, y:alpha. ((p(x) -> q(y)) <-> (~q(y) -> ~p(x)))"),
    ("currying-0", "E", "((p(a) & q(b)) -> r(c)) <-> (p(a) -> (q(b) -> r(c)))"),
    ("currying-1", "E", "forall x:alpha, y:alpha, z:alpha. (((p(x) & q(y)) -> r(z)) <-> (p(x) -> (q(y) -> r(z))))"),
    ("addGround-0", "N+Add", "add(1, 2) = 3"),
    ("addGround-1", "N+Add", "add(8, 5) = 13"),
    ("addExists", "N+Add", "exists x:nat. add(8, x) = 13"),
    ("existsZeroAdd", "N+Add", "exists z:nat. forall x:nat. add(z, x) = x"),
    ("mulGround", "N+Add+Mul", "mul(3, 4) = 12"),
    ("mulExists", "N+Add+Mul", "exists x:nat. mul(3, x) = 12"),
    ("existsZeroMul", "N+Add+Mul", "exists z:nat. forall x:nat. mul(z, x) = x"),
    ("appendGround-0", "N+L+App", "app(nil, cons(7, nil)) = cons(7, nil)"),
    ("appendGround-1", "N+L+App", "app(cons(3, nil), cons(7, nil)) = cons(3, cons(7, nil))"),
    ("appendExists", "N+L+App", "exists x:lst. app(cons(3, nil), x) = cons(3, cons(7, nil))"),
    ("existsNil", "N+L+App", "exists n:lst. app(n, cons(7, nil)) = cons(7, nil)"),
)

GROUND_REFL1 = ("addGround-0", "addGround-1", "mulGround", "appendGround-0", "appendGround-1")


def refl1_base_conjecture(pid: str) -> tuple[str, Formula]:
    for i, name, text in REFL1:
        if i == pid:
            return name, parse_formula(text, builtin_theory(name).signature, allow_free=False)
    raise KeyError(pid)


def gen_refl1() -> list[ProblemInstance]:
    out = []
    for pid, name, _ in REFL1:
        _, phi = refl1_base_conjecture(pid)
        th = _reflective(name)
        out.append(ProblemInstance(pid, "refl1", th, truth_statement(th, phi), REFLECTIVE, CONSEQUENCE, name))
    return out


# -- Ind --------------------------------------------------------------------

IND: tuple[tuple[str, str, str], ...] = (
    ("addCommut", "N+Add", "forall x:nat, y:nat. add(x, y) = add(y, x)"),
    ("mulCommut", "N+Add+Mul", "forall x:nat, y:nat. mul(x, y) = mul(y, x)"),
    ("addAssoc", "N+Add", "forall x:nat, y:nat, z:nat. add(x, add(y, z)) = add(add(x, y), z)"),
    ("mulAssoc", "N+Add+Mul", "forall x:nat, y:nat, z:nat. mul(x, mul(y, z)) = mul(mul(x, y), z)"),
    ("addNeutral", "N+Add", "forall x:nat. add(x, zero) = x"),
    ("addNeutral-0", "N+Add+Mul", "forall x:nat. mul(x, 1) = x"),
    ("addNeutral-1", "N+Add+Mul", "forall x:nat. mul(1, x) = x"),
    ("mulZero", "N+Add+Mul", "forall x:nat. mul(x, zero) = zero"),
    ("distr-0", "N+Add+Mul", "forall x:nat, y:nat, z:nat. mul(x, add(y, z)) = add(mul(x, y), mul(x, z))"),
    ("distr-1", "N+Add+Mul", "forall x:nat, y:nat, z:nat. mul(add(y, z), x) = add(mul(y, x), mul(z, x))"),
    ("leqTrans", "N+Leq", "forall x:nat, y:nat, z:nat. ((leq(x, y) & leq(y, z)) -> leq(x, z))"),
    ("zeroMin", "N+Leq", "forall x:nat. leq(zero, x)"),
    ("addMonoton-0", "N+Leq+Add", "forall x:nat, y:nat. leq(x, add(x, y))"),
    ("addMonoton-1", "N+Leq+Add", "forall x:nat. leq(x, add(x, x))"),
    ("addCommutId", "N+Add+Id", "forall x:nat, y:nat. add(id(x), y) = add(y, x)"),
    ("appendAssoc", "N+L+App", "forall x:lst, y:lst, z:lst. app(x, app(y, z)) = app(app(x, y), z)"),
    ("appendMonoton", "N+L+Pref+App", "forall x:lst, y:lst. pref(x, app(x, y))"),
    ("allEqRefl", "N+Eq", "forall x:nat. equal(x, x, x)"),
    ("allEqDefsEquality", "N+Eq", "forall x:nat, y:nat, z:nat. (equal(x, y, z) <-> (x = y & y = z))"),
    ("revSelfInvers", "N+L+App+Rev", "forall x:lst. rev(rev(x)) = x"),
    ("revAppend-0", "N+L+App+Rev", "forall x:lst. app(x, app(rev(x), x)) = app(app(x, rev(x)), x)"),
    ("revAppend-1", "N+L+App+Rev", "forall x:lst. rev(app(x, app(x, x))) = rev(app(app(x, x), x))"),
    ("revsEqual", "N+L+App+Rev+Rev'", "forall x:lst. rev(x) = rev'(x)"),
)

ALIASES = {"allEqDfsEquality": "allEqDefsEquality"}

NATIVE = "native"
IND_MODES = (NATIVE, REFLECTIVE)


def canonical_id(pid: str) -> str:
    return ALIASES.get(pid, pid)


def reindex_outermost(phi: Formula) -> Formula:
    """Rename bound variables so the outermost quantifier binds index 0.

    Quantifiers of a leading ``forall`` block are numbered 0, 1, ... per sort
    in order; the rest of the formula is unchanged apart from capture-free
    renaming.
    """
    prefix: list[Var] = []
    body = phi
    while isinstance(body, Forall):
        prefix.append(body.var)
        body = body.body
    counts: dict = {}
    mapping: dict[Var, Var] = {}
    for v in prefix:
        i = counts.get(v.sort, 0)
        counts[v.sort] = i + 1
        mapping[v] = Var(i, v.sort)
    if all(k == w for k, w in mapping.items()):
        return phi
    # rename through fresh temporary indices so that swaps cannot clash
    top = 1 + max([v.index for v in prefix] + [v.index for v in free_vars(body)] + [0])
    tmp = {v: Var(top + k, v.sort) for k, v in enumerate(prefix)}
    renamed = subst_many(body, tmp)
    renamed = subst_many(renamed, {tmp[v]: mapping[v] for v in prefix})
    for v in reversed(prefix):
        renamed = Forall(mapping[v], renamed)
    return renamed


def ind_base_conjecture(pid: str) -> tuple[str, Formula]:
    pid = canonical_id(pid)
    for i, name, text in IND:
        if i == pid:
            return name, parse_formula(text, builtin_theory(name).signature, allow_free=False)
    raise KeyError(pid)


def gen_ind(mode: str = NATIVE) -> list[ProblemInstance]:
    if mode not in IND_MODES:
        raise ValueError(f"mode must be one of {IND_MODES}")
    out = []
    for pid, name, _ in IND:
        _, phi = ind_base_conjecture(pid)
        if mode == NATIVE:
            out.append(ProblemInstance(pid, "ind", builtin_theory(name), phi, DIRECT, INDUCTIVE, name))
        else:
            th = _reflective_inductive(name)
            out.append(
                ProblemInstance(pid, "ind", th, reindex_outermost(phi), REFLECTIVE_INDUCTIVE, INDUCTIVE, name)
            )
    return out


SUITES = ("refl0", "refl1", "ind")


def gen_suite(suite: str, mode: str | None = None) -> list[ProblemInstance]:
    if suite == "refl0":
        return gen_refl0()
    if suite == "refl1":
        return gen_refl1()
    if suite == "ind":
        return gen_ind(mode or NATIVE)
    raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")


def find_problem(pid: str, suite: str | None = None, mode: str | None = None) -> ProblemInstance:
    pid = canonical_id(pid)
    suites = [suite] if suite else list(SUITES)
    for s in suites:
        for p in gen_suite(s, mode):
            if p.id == pid:
                return p
    raise KeyError(pid)


def with_theory(problem: ProblemInstance, theory: Theory) -> ProblemInstance:
    return replace(problem, theory=theory)


__all__ = [
    "FRAGMENTS",
    "ProblemInstance",
    "builtin_theory",
    "gen_refl0",
    "gen_refl1",
    "gen_ind",
    "gen_suite",
    "truth_statement",
    "reindex_outermost",
    "REFL1",
    "IND",
    "GROUND_REFL1",
    "CATALOG_COMBINATIONS",
]
