"""Structural induction: scheme instances, the finite reflective induction
axiom, and constructor disjointness/injectivity."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import AlreadyReflected, SortMismatch
from .logic import (
    REFLECTIVE_INDUCTIVE,
    App,
    Forall,
    Formula,
    FunSym,
    Implies,
    InductiveDatatype,
    Not,
    Sort,
    Term,
    Theory,
    Var,
    conj,
    eq,
    forall_all,
    free_vars,
    substitute,
    typecheck,
)
from .reflection import ReflectionMap, reflect_signature, reflective_extension


@dataclass(frozen=True)
class InductionTemplate:
    datatype: InductiveDatatype
    hole: Var
    body: Formula

    def __post_init__(self):
        if self.hole.sort != self.datatype.sort:
            raise SortMismatch(f"induction variable has sort {self.hole.sort}, datatype is {self.datatype.sort}")

    def at(self, t: Term) -> Formula:
        return substitute(self.body, self.hole, t)


def _ctor_vars(ctor: FunSym, avoid: set[Var]) -> list[Var]:
    out: list[Var] = []
    taken = set(avoid)
    for s in ctor.domain:
        i = 0
        while Var(i, s) in taken:
            i += 1
        v = Var(i, s)
        taken.add(v)
        out.append(v)
    return out


def induction_case(template: InductionTemplate, ctor: FunSym) -> Formula:
    """``forall x1..xn. (/\\ phi[x_i] for recursive i) -> phi[c(x1..xn)]``."""
    params = free_vars(template.body) - {template.hole}
    xs = _ctor_vars(ctor, params)
    rec = template.datatype.recursive_positions(ctor)
    step = template.at(App(ctor, tuple(xs)))
    if rec:
        step = Implies(conj(template.at(xs[i]) for i in rec), step)
    return forall_all(xs, step)


def induction_scheme_instance(template: InductionTemplate) -> Formula:
    """The instance of the first-order structural induction scheme for ``template``.

    An unconditional case ``true -> phi[c]`` is emitted as ``phi[c]``.
    """
    cases = [induction_case(template, c) for c in template.datatype.ctors]
    return Implies(conj(cases), Forall(template.hole, template.body))


def reflective_induction_axiom(datatype: InductiveDatatype, rmap: ReflectionMap) -> Formula:
    """One axiom quantifying over ``form`` that replaces the whole scheme."""
    tau = datatype.sort
    phi = Var(0, rmap.form)
    cases = []
    for c in datatype.ctors:
        xs = _ctor_vars(c, set())
        step = rmap.true_at(tau, phi, App(c, tuple(xs)))
        rec = datatype.recursive_positions(c)
        if rec:
            step = Implies(conj(rmap.true_at(tau, phi, xs[i]) for i in rec), step)
        cases.append(forall_all(xs, step))
    x = Var(0, tau)
    return Forall(phi, Implies(conj(cases), Forall(x, rmap.true_at(tau, phi, x))))


def instantiate(axiom: Formula, code: Term) -> Formula:
    """Drop the outer ``forall phi:form`` of a reflective induction axiom, binding it to ``code``."""
    if not isinstance(axiom, Forall):
        raise ValueError("expected a universally quantified axiom")
    return substitute(axiom.body, axiom.var, code)


def disjointness_axioms(datatype: InductiveDatatype) -> list[Formula]:
    out = []
    ctors = datatype.ctors
    for i, c in enumerate(ctors):
        for d in ctors[i + 1 :]:
            xs = _ctor_vars(c, set())
            ys = _ctor_vars(d, set(xs))
            out.append(forall_all(xs + ys, Not(eq(App(c, tuple(xs)), App(d, tuple(ys))))))
    return out


def injectivity_axioms(datatype: InductiveDatatype) -> list[Formula]:
    out = []
    for c in datatype.ctors:
        if not c.domain:
            continue
        xs = _ctor_vars(c, set())
        ys = _ctor_vars(c, set(xs))
        premise = eq(App(c, tuple(xs)), App(c, tuple(ys)))
        out.append(forall_all(xs + ys, Implies(premise, conj(eq(x, y) for x, y in zip(xs, ys)))))
    return out


def ctor_axioms(datatype: InductiveDatatype) -> list[Formula]:
    """Pairwise disjointness then per-constructor injectivity; no exhaustiveness."""
    return disjointness_axioms(datatype) + injectivity_axioms(datatype)


def reflective_inductive_extension(theory: Theory) -> Theory:
    """Reflective extension plus, per datatype, its induction axiom and constructor axioms."""
    if theory.reflection is not None:
        raise AlreadyReflected(f"theory {theory.name!r} is already a {theory.reflection} extension")
    ext = reflective_extension(theory)
    rmap = reflect_signature(theory)
    extra: list[Formula] = []
    for d in theory.datatypes:
        extra.append(reflective_induction_axiom(d, rmap))
        extra.extend(ctor_axioms(d))
    out = replace(ext, axioms=ext.axioms + tuple(extra), reflection=REFLECTIVE_INDUCTIVE)
    typecheck(out)
    return out


def datatype_of(theory: Theory, sort: Sort) -> InductiveDatatype:
    d = theory.datatype(sort)
    if d is None:
        raise KeyError(f"no datatype for sort {sort}")
    return d
