"""Shared fixtures."""

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from src.models.multiindex import MultiIndex
from src.models.series import TaylorSeries
from src.services.bell import BellCache
from src.services.fdb import FaaDiBrunoService

FIXTURES = Path(__file__).parent.parent / "fixtures"


def scalar_series(values, center=0, order=None) -> TaylorSeries:
    """1-D scalar series from its derivatives [s(c), s'(c), s''(c), ...]."""
    order = len(values) - 1 if order is None else order
    coeffs = {MultiIndex.of(i): (Fraction(v),) for i, v in enumerate(values)}
    return TaylorSeries(1, 1, order, (center,), coeffs)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def engine() -> FaaDiBrunoService:
    """An engine with a private cache so tests do not share memo state."""
    return FaaDiBrunoService(cache=BellCache(enabled=True), workers=1)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)
