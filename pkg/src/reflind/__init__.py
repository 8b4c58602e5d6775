"""Reflective extensions of many-sorted first-order theories.

A theory is extended with sorts and symbols describing its own syntax and
satisfaction relation, so that schemata such as structural induction become
single first-order axioms quantifying over formula codes.
"""

from .benchgen import ProblemInstance, builtin_theory, gen_ind, gen_refl0, gen_refl1, gen_suite
from .errors import ReflindError
from .induction import induction_scheme_instance, reflective_induction_axiom, reflective_inductive_extension
from .logic import (
    FunSym,
    InductiveDatatype,
    PredSym,
    Signature,
    Sort,
    Theory,
    Var,
    alpha_eq,
    normalize,
    typecheck,
)
from .reflection import (
    ReflectionMap,
    godel_decode,
    godel_encode,
    reflect_axioms,
    reflect_signature,
    reflective_extension,
)

__version__ = "0.1.0"

__all__ = [
    "ProblemInstance",
    "builtin_theory",
    "gen_ind",
    "gen_refl0",
    "gen_refl1",
    "gen_suite",
    "ReflindError",
    "induction_scheme_instance",
    "reflective_induction_axiom",
    "reflective_inductive_extension",
    "FunSym",
    "InductiveDatatype",
    "PredSym",
    "Signature",
    "Sort",
    "Theory",
    "Var",
    "alpha_eq",
    "normalize",
    "typecheck",
    "ReflectionMap",
    "godel_decode",
    "godel_encode",
    "reflect_axioms",
    "reflect_signature",
    "reflective_extension",
    "__version__",
]
