"""Composition request/response formats and the generating identity report."""

from typing import Optional

from pydantic import BaseModel, Field, model_validator

from src.models.multiindex import MultiIndex
from src.models.series import Vector
from src.models.tensor import DerivTensor
from src.schemas.common import Rational, format_rational
from src.schemas.series import SeriesDocument


class DerivativeEntry(BaseModel):
    """d^n/dx^n f(g(x)) at the expansion point."""

    n: list[int]
    v: list[Rational]

    @classmethod
    def of(cls, n: MultiIndex, value: Vector) -> "DerivativeEntry":
        return cls(n=n.to_json(), v=[format_rational(x) for x in value])


class DerivTensorResponse(BaseModel):
    d_in: int
    d_out: int
    order: int
    values: list[DerivativeEntry] = Field(default_factory=list)

    @classmethod
    def from_tensor(cls, tensor: DerivTensor) -> "DerivTensorResponse":
        return cls(
            d_in=tensor.d_in,
            d_out=tensor.d_out,
            order=tensor.order,
            values=[DerivativeEntry.of(n, tensor[n]) for n in tensor.keys()],
        )


class ComposeRequest(BaseModel):
    """Derivatives of f(g(x)); give either n or all."""

    f: SeriesDocument
    g: SeriesDocument
    n: Optional[list[int]] = Field(None, description="Single multi-index to differentiate by")
    all: Optional[int] = Field(None, ge=0, description="Every |n| up to this order")

    @model_validator(mode="after")
    def _exactly_one_target(self) -> "ComposeRequest":
        if (self.n is None) == (self.all is None):
            raise ValueError("give exactly one of 'n' and 'all'")
        return self


class Mismatch(BaseModel):
    n: list[int]
    lhs: Rational
    rhs: Rational


class GenfunReport(BaseModel):
    """Coefficientwise comparison of the two sides of the generating identity.

    An empty mismatch list means the identity holds through max_abs_n.
    """

    max_abs_n: int
    mismatches: list[Mismatch] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches
