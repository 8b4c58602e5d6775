"""SMT-LIB 2 emitter.

The conjecture is asserted negated, so ``unsat`` means the problem is
proved.  Datatype sorts are either declared with ``declare-datatypes``
(native) or as uninterpreted sorts plus disjointness and injectivity
axioms (axiomatized).  Reflective sorts are always uninterpreted.
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
from .common import AXIOMATIZED, DATATYPE_MODES, NATIVE, as_problem, axioms_for, default_datatype_mode
from .names import NameTable

if TYPE_CHECKING:
    from ..benchgen import ProblemInstance

_SIMPLE = re.compile(r"[A-Za-z~!$%^&*_+=<>?/\-][A-Za-z0-9~!$%^&*_+=<>.?/\-]*\Z")

RESERVED = {
    "_", "!", "as", "let", "exists", "forall", "match", "par",
    "BINARY", "DECIMAL", "HEXADECIMAL", "NUMERAL", "STRING",
    "assert", "check-sat", "declare-const", "declare-datatype", "declare-datatypes",
    "declare-fun", "declare-sort", "define-fun", "define-sort", "exit", "pop", "push",
    "set-info", "set-logic", "set-option",
    "true", "false", "not", "=>", "and", "or", "xor", "=", "distinct", "ite",
    "Bool", "Int", "Real", "String", "Array",
}


def symbol(name: str) -> str:
    """A legal SMT-LIB symbol for ``name``: simple when possible, else ``|quoted|``."""
    if _SIMPLE.match(name):
        return name
    if "|" in name or "\\" in name:
        raise UnsupportedFeature(f"name {name!r} cannot be quoted in SMT-LIB")
    return f"|{name}|"


class _Writer:
    def __init__(self, problem: ProblemInstance, mode: str):
        self.p = problem
        self.mode = mode
        self.names = NameTable(symbol, RESERVED)
        sig = problem.theory.signature
        for s in sig.sorts:
            self.names(("sort", s.name), s.name)
        for f in sig.funs:
            self.names(("sym", f.name), f.name)
        for q in sig.preds:
            self.names(("sym", q.name), q.name)

    def sort(self, s) -> str:
        return self.names(("sort", s.name))

    def sym(self, name: str) -> str:
        return self.names(("sym", name))

    def var(self, v: Var) -> str:
        return self.names(("var", v.index, v.sort.name), f"x{v.index}.{v.sort.name}")

    def term(self, t: Term) -> str:
        if isinstance(t, Var):
            return self.var(t)
        if not t.args:
            return self.sym(t.fun.name)
        return f"({self.sym(t.fun.name)} {' '.join(self.term(a) for a in t.args)})"

    def form(self, phi: Formula) -> str:
        match phi:
            case Bot():
                return "false"
            case Top():
                return "true"
            case Pred(p, args):
                if not args:
                    return self.sym(p.name)
                return f"({self.sym(p.name)} {' '.join(self.term(a) for a in args)})"
            case Eq(_, l, r):
                return f"(= {self.term(l)} {self.term(r)})"
            case Not(a):
                return f"(not {self.form(a)})"
            case Or(a, b):
                return f"(or {self.form(a)} {self.form(b)})"
            case And(a, b):
                return f"(and {self.form(a)} {self.form(b)})"
            case Implies(a, b):
                return f"(=> {self.form(a)} {self.form(b)})"
            case Iff(a, b):
                return f"(= {self.form(a)} {self.form(b)})"
            case Forall() | Exists():
                kind = type(phi)
                vs = []
                body = phi
                while isinstance(body, kind):
                    vs.append(body.var)
                    body = body.body
                binds = " ".join(f"({self.var(v)} {self.sort(v.sort)})" for v in vs)
                q = "forall" if kind is Forall else "exists"
                return f"({q} ({binds}) {self.form(body)})"
        raise UnsupportedFeature(f"cannot emit {type(phi).__name__}")

    def emit(self) -> str:
        th = self.p.theory
        sig = th.signature
        native = self.mode == NATIVE and bool(th.datatypes)
        out = [
            "(set-info :smt-lib-version 2.6)",
            f"(set-info :source |{self.p.id}|)",
            f"(set-logic {'UFDT' if native else 'UF'})",
        ]
        dt_sorts = {d.sort for d in th.datatypes} if native else set()
        ctors = {c for d in th.datatypes for c in d.ctors} if native else set()
        for s in sig.sorts:
            if s not in dt_sorts:
                out.append(f"(declare-sort {self.sort(s)} 0)")
        if native:
            heads = " ".join(f"({self.sort(d.sort)} 0)" for d in th.datatypes)
            bodies = []
            for d in th.datatypes:
                cs = []
                for c in d.ctors:
                    sels = "".join(
                        f" ({self.names(('sel', c.name, i), f'{c.name}#{i}')} {self.sort(a)})"
                        for i, a in enumerate(c.domain)
                    )
                    cs.append(f"({self.sym(c.name)}{sels})")
                bodies.append(f"({' '.join(cs)})")
            out.append(f"(declare-datatypes ({heads}) ({' '.join(bodies)}))")
        for f in sig.funs:
            if f in ctors:
                continue
            dom = " ".join(self.sort(s) for s in f.domain)
            out.append(f"(declare-fun {self.sym(f.name)} ({dom}) {self.sort(f.codomain)})")
        for q in sig.preds:
            dom = " ".join(self.sort(s) for s in q.domain)
            out.append(f"(declare-fun {self.sym(q.name)} ({dom}) Bool)")
        for ax in axioms_for(th, self.mode):
            out.append(f"(assert {self.form(ax)})")
        if self.p.conjecture is not None:
            out.append(f"(assert (not {self.form(self.p.conjecture)}))")
        out.append("(check-sat)")
        return "\n".join(out) + "\n"


def emit_smtlib(problem, datatype_mode: str | None = None) -> str:
    """Render a problem (or a bare theory) as an SMT-LIB 2 script."""
    p = as_problem(problem)
    mode = datatype_mode or default_datatype_mode(p)
    if mode not in DATATYPE_MODES:
        raise ValueError(f"datatype mode must be one of {DATATYPE_MODES}")
    return _Writer(p, mode).emit()


__all__ = ["emit_smtlib", "symbol", "NATIVE", "AXIOMATIZED"]
