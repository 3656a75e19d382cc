"""Shared field types for the JSON formats."""

import re
from fractions import Fraction
from typing import Annotated, Any

from pydantic import AfterValidator, BeforeValidator

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def _coerce(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    return value


def _check(value: str) -> str:
    value = value.strip()
    if not _RATIONAL.match(value):
        raise ValueError(f"not an exact rational of the form p or p/q: {value!r}")
    if "/" in value and int(value.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return str(Fraction(value))


# Exact rationals travel as "p/q" strings ("p" for integers), normalised on input.
Rational = Annotated[str, BeforeValidator(_coerce), AfterValidator(_check)]


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def parse_rational(value: str) -> Fraction:
    return Fraction(value)
