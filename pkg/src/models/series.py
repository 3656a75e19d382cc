"""Truncated multivariate Taylor series in the derivative convention.

A series f: F^d_in -> F^d_out of order N about a center c stores, for every
|n| <= N, the vector f_n = f^(n)(c), so that f(x) = sum f_n (x - c)^n / n!.
Absent keys mean a zero coefficient.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from src.exceptions import ContractError, DimensionError, TruncationError
from src.models.multiindex import MultiIndex, sorted_graded

Scalar = Union[int, Fraction]
Vector = tuple[Fraction, ...]


def to_vector(values: Sequence[Scalar]) -> Vector:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class TaylorSeries:
    """Immutable truncated Taylor series with exact rational coefficients."""

    d_in: int
    d_out: int
    order: int
    center: Vector
    coeffs: Mapping[MultiIndex, Vector] = field(default_factory=dict)

    def __post_init__(self):
        if self.d_in < 1 or self.d_out < 1:
            raise ContractError("Series dimensions must be >= 1", "d_in, d_out >= 1")
        if self.order < 0:
            raise ContractError("Truncation order must be >= 0", "order >= 0")
        center = to_vector(self.center)
        if len(center) != self.d_in:
            raise DimensionError(f"Center has length {len(center)}, expected d_in={self.d_in}")
        canonical: dict[MultiIndex, Vector] = {}
        for n, value in self.coeffs.items():
            if n.dim != self.d_in:
                raise DimensionError(f"Coefficient key {n} does not have dimension {self.d_in}")
            if abs(n) > self.order:
                raise TruncationError(f"Coefficient key {n} exceeds truncation order {self.order}")
            vec = to_vector(value)
            if len(vec) != self.d_out:
                raise DimensionError(f"Coefficient at {n} has length {len(vec)}, expected {self.d_out}")
            if any(vec):
                canonical[n] = vec
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "coeffs", canonical)

    @property
    def zero_vector(self) -> Vector:
        return (Fraction(0),) * self.d_out

    @property
    def value(self) -> Vector:
        """f(center), the coefficient at the zero multi-index."""
        return self.coefficient(MultiIndex.zero(self.d_in))

    def coefficient(self, n: MultiIndex) -> Vector:
        return self.coeffs.get(n, self.zero_vector)

    def derivative_at(self, n: MultiIndex) -> Vector:
        """f^(n)(center); TruncationError when |n| exceeds the order."""
        if n.dim != self.d_in:
            raise DimensionError(f"Derivative index {n} does not have dimension {self.d_in}")
        if abs(n) > self.order:
            raise TruncationError(
                f"Derivative {n} of order {abs(n)} requested from a series truncated at {self.order}"
            )
        return self.coefficient(n)

    def keys(self) -> list[MultiIndex]:
        return sorted_graded(self.coeffs)
