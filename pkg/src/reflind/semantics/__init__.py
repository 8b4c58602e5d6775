"""Model-theoretic evaluation, formula enumeration and partial evaluation."""

from .enumerate import count_formulas, enumerate_formulas, ground_terms, random_formula
from .model import (
    FALSE,
    TRUE,
    UNKNOWN,
    Interpretation,
    TruthValue,
    check_truth_predicate,
    eval_formula,
    eval_term,
    finite_interpretation,
    reflective_model,
    standard_model,
)
from .partial_eval import partial_eval

__all__ = [
    "count_formulas",
    "enumerate_formulas",
    "ground_terms",
    "random_formula",
    "FALSE",
    "TRUE",
    "UNKNOWN",
    "Interpretation",
    "TruthValue",
    "check_truth_predicate",
    "eval_formula",
    "eval_term",
    "finite_interpretation",
    "reflective_model",
    "standard_model",
    "partial_eval",
]
