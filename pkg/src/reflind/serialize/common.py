"""Bits shared by the prover emitters."""

from __future__ import annotations

from ..benchgen import DIRECT, ProblemInstance
from ..errors import ReflindError
from ..induction import ctor_axioms
from ..logic import Formula, Theory, alpha_eq

NATIVE = "native"
AXIOMATIZED = "axiomatized"
DATATYPE_MODES = (NATIVE, AXIOMATIZED)


def default_datatype_mode(problem: ProblemInstance) -> str:
    """Native datatypes for base-language problems, axiomatized for reflective ones."""
    return NATIVE if problem.mode == DIRECT else AXIOMATIZED


def as_problem(obj, conjecture: Formula | None = None, pid: str | None = None) -> ProblemInstance:
    if isinstance(obj, ProblemInstance):
        return obj
    if isinstance(obj, Theory):
        return ProblemInstance(pid or obj.name, "", obj, conjecture, DIRECT, "", obj.name)
    raise ReflindError(f"cannot emit {type(obj).__name__}")


def ctor_axiom_list(theory: Theory) -> list[Formula]:
    out: list[Formula] = []
    for d in theory.datatypes:
        out += ctor_axioms(d)
    return out


def axioms_for(theory: Theory, mode: str) -> list[Formula]:
    """Theory axioms, adjusted for the datatype mode.

    Axiomatized mode adds the constructor axioms the theory does not already
    carry; native mode drops them since the declarations imply them.
    """
    ctor = ctor_axiom_list(theory)
    ax = list(theory.axioms)
    if mode == NATIVE:
        return [a for a in ax if not any(alpha_eq(a, c) for c in ctor)]
    missing = [c for c in ctor if not any(alpha_eq(a, c) for a in ax)]
    return ax + missing
