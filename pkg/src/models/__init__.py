"""Immutable domain values for Bell-FdB Lab."""

from src.models.assignment import SolutionAssignment, SolutionSetSpec
from src.models.multiindex import MultiIndex, vec_pow
from src.models.polynomial import Monomial, SparsePoly, VarId
from src.models.series import TaylorSeries
from src.models.tensor import DerivTensor

__all__ = [
    "MultiIndex",
    "vec_pow",
    "SolutionAssignment",
    "SolutionSetSpec",
    "VarId",
    "Monomial",
    "SparsePoly",
    "TaylorSeries",
    "DerivTensor",
]
