"""Partial evaluation of reflective satisfaction by rewriting.

The rules are the generated satisfaction/evaluation axioms themselves,
oriented left to right:

* ``forall ... l = r``                   rewrites the term ``l`` to ``r``;
* ``forall ... ~(x = y) -> l = r``       does the same when the variable codes
  bound to ``x`` and ``y`` are syntactically distinct;
* ``forall ... models(e, c) <-> phi``    replaces the atom by ``phi``.

Terms are normalized innermost first; a formula rule fires once its atom's
arguments are normal.  Instantiating a rule body that contains a quantifier
goes through capture-avoiding substitution.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import Stuck
from ..logic import (
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
    Term,
    Top,
    Var,
    subst_many,
    subst_term,
)
from ..reflection import ReflectionMap, reflect_axioms


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: Term | Pred
    rhs: Term | Formula
    variables: frozenset[Var]
    guard: tuple[Var, Var] | None = None

    @property
    def head(self) -> str:
        return self.lhs.pred.name if isinstance(self.lhs, Pred) else self.lhs.fun.name

    @property
    def discriminator(self) -> tuple[int, str] | None:
        """First argument position whose pattern is an application, with its head."""
        for i, a in enumerate(self.lhs.args):
            if isinstance(a, App):
                return i, a.fun.name
        return None


def rules_from_axioms(axioms, rmap: ReflectionMap) -> list[Rule]:
    out = []
    for k, ax in enumerate(axioms):
        vs = []
        body = ax
        while isinstance(body, Forall):
            vs.append(body.var)
            body = body.body
        variables = frozenset(vs)
        name = f"ax{k}"
        match body:
            case Eq(_, l, r):
                out.append(Rule(name, l, r, variables))
            case Implies(Not(Eq(_, Var() as x, Var() as y)), Eq(_, l, r)):
                out.append(Rule(name, l, r, variables, (x, y)))
            case Iff(Pred() as l, r) if l.pred == rmap.models:
                out.append(Rule(name, l, r, variables))
            case _:
                raise ValueError(f"axiom {k} is not an orientable rule")
    return out


def _match(pat, subj, variables, binding: dict) -> bool:
    if isinstance(pat, Var) and pat in variables:
        bound = binding.get(pat)
        if bound is None:
            binding[pat] = subj
            return True
        return bound == subj
    if isinstance(pat, Var):
        return pat == subj
    if not isinstance(subj, App) or subj.fun != pat.fun:
        return False
    return all(_match(p, s, variables, binding) for p, s in zip(pat.args, subj.args))


class Rewriter:
    def __init__(self, rmap: ReflectionMap, rules: list[Rule] | None = None):
        self.rmap = rmap
        self.rules = rules if rules is not None else rules_from_axioms(reflect_axioms(rmap.base, rmap), rmap)
        self._index: dict[str, list[Rule]] = {}
        for r in self.rules:
            self._index.setdefault(r.head, []).append(r)
        self._var_codes = {rmap.v0[s].name for s in rmap.v0} | {rmap.next[s].name for s in rmap.next}
        self._cache: dict[Term, Term] = {}

    def _candidates(self, head: str, args) -> list[Rule]:
        out = []
        for r in self._index.get(head, ()):
            d = r.discriminator
            if d is not None:
                a = args[d[0]]
                if not isinstance(a, App) or a.fun.name != d[1]:
                    continue
            out.append(r)
        return out

    def _is_var_code(self, t: Term) -> bool:
        while isinstance(t, App) and t.fun.name in self._var_codes:
            if not t.args:
                return True
            t = t.args[0]
        return False

    def _guard_holds(self, rule: Rule, b: dict) -> bool:
        x, y = (b[v] for v in rule.guard)
        # distinct ground variable codes are distinct elements of a free structure
        return self._is_var_code(x) and self._is_var_code(y) and x != y

    def term(self, t: Term) -> Term:
        if isinstance(t, Var):
            return t
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        args = tuple(self.term(a) for a in t.args)
        cur = App(t.fun, args) if args != t.args else t
        for r in self._candidates(cur.fun.name, args):
            b: dict = {}
            if not _match(r.lhs, cur, r.variables, b):
                continue
            if r.guard is not None and not self._guard_holds(r, b):
                continue
            out = self.term(subst_term(r.rhs, b))
            self._cache[t] = out
            return out
        self._cache[t] = cur
        return cur

    def formula(self, phi: Formula) -> Formula:
        match phi:
            case Bot() | Top():
                return phi
            case Pred(p, args):
                args = tuple(self.term(a) for a in args)
                atom = Pred(p, args)
                for r in self._candidates(p.name, args):
                    b: dict = {}
                    if all(_match(q, a, r.variables, b) for q, a in zip(r.lhs.args, args)):
                        return self.formula(subst_many(r.rhs, b))
                return atom
            case Eq(s, l, r):
                return Eq(s, self.term(l), self.term(r))
            case Not(a):
                return Not(self.formula(a))
            case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
                return type(phi)(self.formula(a), self.formula(b))
            case Forall(v, body) | Exists(v, body):
                return type(phi)(v, self.formula(body))
        raise TypeError(f"not a formula: {phi!r}")


def _residual(phi, reflective: set[str]):
    """First subterm or atom that still mentions a reflective symbol."""

    def in_term(t):
        if isinstance(t, Var):
            return None
        if t.fun.name in reflective:
            return t
        for a in t.args:
            hit = in_term(a)
            if hit is not None:
                return hit
        return None

    match phi:
        case Pred(p, args):
            if p.name in reflective:
                return phi
            for a in args:
                hit = in_term(a)
                if hit is not None:
                    return hit
        case Eq(_, l, r):
            return in_term(l) or in_term(r)
        case Not(a) | Forall(_, a) | Exists(_, a):
            if isinstance(phi, (Forall, Exists)) and phi.var.sort.kind != "base":
                return phi
            return _residual(a, reflective)
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            return _residual(a, reflective) or _residual(b, reflective)
    return None


_REWRITERS: dict = {}


def rewriter_for(rmap: ReflectionMap) -> Rewriter:
    rw = _REWRITERS.get(rmap.base)
    if rw is None or rw.rmap != rmap:
        rw = _REWRITERS[rmap.base] = Rewriter(rmap)
    return rw


def partial_eval(phi: Formula, rmap: ReflectionMap, rewriter: Rewriter | None = None) -> Formula:
    """Rewrite reflective satisfaction away, leaving a base-signature formula.

    Raises :class:`Stuck` when a reflective symbol survives, for instance a
    variable lookup that reaches ``empty``.
    """
    rw = rewriter or rewriter_for(rmap)
    out = rw.formula(phi)
    hit = _residual(out, set(rmap.roles))
    if hit is not None:
        from ..logic import show

        raise Stuck(f"no rule reduces {show(hit)}", hit)
    return out


__all__ = ["Rule", "Rewriter", "rules_from_axioms", "partial_eval", "rewriter_for"]
