"""Bell polynomial wire formats."""

from typing import Optional

from pydantic import BaseModel, Field

from src.models.multiindex import MultiIndex
from src.models.polynomial import SparsePoly
from src.schemas.common import Rational, format_rational


# [j, comp, exp] stands for x_{j, comp}^exp
Factor = tuple[list[int], int, int]


class Term(BaseModel):
    coeff: Rational
    monomial: list[Factor] = Field(default_factory=list)


class PolynomialResponse(BaseModel):
    """A rendered Bell polynomial with its canonical term list."""

    n: list[int]
    k: Optional[list[int]] = Field(None, description="Part count; absent for complete polynomials")
    d1: int
    d2: int
    text: str = Field(..., description="Plain-text rendering")
    terms: list[Term] = Field(default_factory=list)

    @classmethod
    def from_poly(
        cls, poly: SparsePoly, n: MultiIndex, k: Optional[MultiIndex] = None
    ) -> "PolynomialResponse":
        return cls(
            n=n.to_json(),
            k=k.to_json() if k is not None else None,
            d1=poly.d1,
            d2=poly.d2,
            text=poly.render(),
            terms=[
                Term(
                    coeff=format_rational(coeff),
                    monomial=[(v.j.to_json(), v.comp, e) for v, e in mono.powers],
                )
                for mono, coeff in poly.terms
            ],
        )


class TableResponse(BaseModel):
    max_n: int
    text: str
