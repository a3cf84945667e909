"""Exact Isbell conjugacy for finite categories, posets and metric spaces."""

from .fincat import FinCat, FinFunctor, validate_category
from .setfun import NatTransf, ResourceLimitExceeded, SetFunctor, nat_transformations, representable
from .conjugacy import conjugate, double_conjugate, is_reflexive, unit
from .completion import cauchy_completion, enumerate_reflexive

__all__ = [
    "FinCat",
    "FinFunctor",
    "NatTransf",
    "ResourceLimitExceeded",
    "SetFunctor",
    "cauchy_completion",
    "conjugate",
    "double_conjugate",
    "enumerate_reflexive",
    "is_reflexive",
    "nat_transformations",
    "representable",
    "unit",
    "validate_category",
]
