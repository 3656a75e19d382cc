"""Pydantic schemas for the JSON formats of Bell-FdB Lab."""

from src.schemas.common import Rational, format_rational, parse_rational
from src.schemas.fdb import (
    ComposeRequest,
    DerivativeEntry,
    DerivTensorResponse,
    GenfunReport,
    Mismatch,
)
from src.schemas.polynomial import Factor, PolynomialResponse, TableResponse, Term
from src.schemas.series import CoefficientEntry, SeriesDocument, load_series
from src.schemas.verify import CheckFailure, SuiteName, VerifyReport, VerifyRequest

__all__ = [
    "Rational",
    "format_rational",
    "parse_rational",
    # Series
    "CoefficientEntry",
    "SeriesDocument",
    "load_series",
    # Polynomials
    "Factor",
    "Term",
    "PolynomialResponse",
    "TableResponse",
    # Composition
    "ComposeRequest",
    "DerivativeEntry",
    "DerivTensorResponse",
    "GenfunReport",
    "Mismatch",
    # Verification
    "CheckFailure",
    "SuiteName",
    "VerifyReport",
    "VerifyRequest",
]
