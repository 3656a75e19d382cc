"""Series file format.

{"d_in": 2, "d_out": 1, "order": 4, "center": ["0", "0"],
 "coeffs": [{"n": [1, 0], "v": ["1/2"]}, ...]}

Coefficients are derivatives at the center; absent entries are zero.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from pydantic import BaseModel, Field, ValidationError

from src.exceptions import SeriesFormatError
from src.models.multiindex import MultiIndex
from src.models.series import TaylorSeries
from src.schemas.common import Rational, format_rational


class CoefficientEntry(BaseModel):
    """One derivative vector of a series."""

    n: list[int] = Field(..., min_length=1, description="Multi-index of the derivative")
    v: list[Rational] = Field(..., min_length=1, description="Derivative vector, length d_out")


class SeriesDocument(BaseModel):
    """Wire form of a TaylorSeries."""

    d_in: int = Field(..., ge=1, description="Input dimension")
    d_out: int = Field(..., ge=1, description="Output dimension")
    order: int = Field(..., ge=0, description="Truncation order")
    center: list[Rational] = Field(..., description="Expansion point, length d_in")
    coeffs: list[CoefficientEntry] = Field(default_factory=list)

    @classmethod
    def parse_document(cls, data: Any) -> "SeriesDocument":
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise SeriesFormatError(f"Malformed series document: {e}") from e

    @classmethod
    def load(cls, path: Union[str, Path]) -> "SeriesDocument":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError as e:
            raise SeriesFormatError(f"Series file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise SeriesFormatError(f"{path} is not valid JSON: {e}") from e
        return cls.parse_document(data)

    @classmethod
    def from_series(cls, s: TaylorSeries) -> "SeriesDocument":
        return cls(
            d_in=s.d_in,
            d_out=s.d_out,
            order=s.order,
            center=[format_rational(c) for c in s.center],
            coeffs=[
                CoefficientEntry(n=n.to_json(), v=[format_rational(x) for x in s.coeffs[n]])
                for n in s.keys()
            ],
        )

    def to_series(self) -> TaylorSeries:
        coeffs: dict[MultiIndex, tuple[Fraction, ...]] = {}
        for entry in self.coeffs:
            n = MultiIndex.from_json(entry.n)
            if n in coeffs:
                raise SeriesFormatError(f"Duplicate coefficient entry for n={n}")
            coeffs[n] = tuple(Fraction(x) for x in entry.v)
        return TaylorSeries(
            d_in=self.d_in,
            d_out=self.d_out,
            order=self.order,
            center=tuple(Fraction(c) for c in self.center),
            coeffs=coeffs,
        )


def load_series(path: Union[str, Path]) -> TaylorSeries:
    return SeriesDocument.load(path).to_series()
