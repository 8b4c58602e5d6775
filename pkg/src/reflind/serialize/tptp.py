"""TPTP TFF emitter.

Every sort gets a ``$tType`` declaration and every symbol a type
declaration; datatypes are plain types with their constructor axioms.
The goal carries the ``conjecture`` role.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING

from ..errors import UnsupportedFeature
from ..logic import (
    And,
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
)
from .common import AXIOMATIZED, as_problem, axioms_for
from .names import NameTable

if TYPE_CHECKING:
    from ..benchgen import ProblemInstance

_LOWER_WORD = re.compile(r"[a-z][A-Za-z0-9_]*\Z")

RESERVED = {"tff", "fof", "cnf", "thf", "type", "axiom", "conjecture"}


def atom(name: str) -> str:
    """``name`` as a TPTP atomic word: a lower word, else single-quoted."""
    if _LOWER_WORD.match(name):
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


class _Writer:
    def __init__(self, problem: ProblemInstance):
        self.p = problem
        self.names = NameTable(atom, RESERVED)
        sig = problem.theory.signature
        for s in sig.sorts:
            self.names(("sort", s.name), s.name)
        for f in sig.funs:
            self.names(("sym", f.name), f.name)
        for q in sig.preds:
            self.names(("sym", q.name), q.name)
        self.sort_ids = {s: i for i, s in enumerate(sig.sorts)}

    def sort(self, s) -> str:
        return self.names(("sort", s.name))

    def sym(self, name: str) -> str:
        return self.names(("sym", name))

    def var(self, v: Var) -> str:
        return f"X{v.index}_{self.sort_ids[v.sort]}"

    def term(self, t: Term) -> str:
        if isinstance(t, Var):
            return self.var(t)
        if not t.args:
            return self.sym(t.fun.name)
        return f"{self.sym(t.fun.name)}({', '.join(self.term(a) for a in t.args)})"

    def form(self, phi: Formula) -> str:
        match phi:
            case Bot():
                return "$false"
            case Top():
                return "$true"
            case Pred(p, args):
                if not args:
                    return self.sym(p.name)
                return f"{self.sym(p.name)}({', '.join(self.term(a) for a in args)})"
            case Eq(_, l, r):
                return f"{self.term(l)} = {self.term(r)}"
            case Not(a):
                return f"~ ({self.form(a)})"
            case Or(a, b):
                return f"({self.form(a)} | {self.form(b)})"
            case And(a, b):
                return f"({self.form(a)} & {self.form(b)})"
            case Implies(a, b):
                return f"({self.form(a)} => {self.form(b)})"
            case Iff(a, b):
                return f"({self.form(a)} <=> {self.form(b)})"
            case Forall() | Exists():
                kind = type(phi)
                vs = []
                body = phi
                while isinstance(body, kind):
                    vs.append(body.var)
                    body = body.body
                binds = ", ".join(f"{self.var(v)}: {self.sort(v.sort)}" for v in vs)
                q = "!" if kind is Forall else "?"
                return f"{q}[{binds}]: ({self.form(body)})"
        raise UnsupportedFeature(f"cannot emit {type(phi).__name__}")

    def _profile(self, dom, cod: str) -> str:
        if not dom:
            return cod
        args = [self.sort(s) for s in dom]
        left = args[0] if len(args) == 1 else f"({' * '.join(args)})"
        return f"{left} > {cod}"

    def emit(self) -> str:
        p = self.p
        th = p.theory
        sig = th.signature
        out = [f"% id: {p.id}"]
        for k in ("suite", "mode", "base"):
            v = getattr(p, k)
            if v:
                out.append(f"% {k}: {v}")
        for i, s in enumerate(sig.sorts):
            out.append(f"tff(sort{i}, type, {self.sort(s)}: $tType).")
        k = 0
        for f in sig.funs:
            out.append(f"tff(sym{k}, type, {self.sym(f.name)}: {self._profile(f.domain, self.sort(f.codomain))}).")
            k += 1
        for q in sig.preds:
            out.append(f"tff(sym{k}, type, {self.sym(q.name)}: {self._profile(q.domain, '$o')}).")
            k += 1
        for i, ax in enumerate(axioms_for(th, AXIOMATIZED)):
            out.append(f"tff(ax{i}, axiom, {self.form(ax)}).")
        if p.conjecture is not None:
            out.append(f"tff(goal, conjecture, {self.form(p.conjecture)}).")
        return "\n".join(out) + "\n"


def emit_tptp(problem) -> str:
    """Render a problem (or a bare theory) in TPTP TFF."""
    return _Writer(as_problem(problem)).emit()


__all__ = ["emit_tptp", "atom"]
