"""Tests for the Faa di Bruno engine."""

from fractions import Fraction

import numpy as np

import pytest

from src.exceptions import ContractError, DimensionError, TruncationError
from src.models.multiindex import MultiIndex, enumerate_upto
from src.models.series import TaylorSeries
from src.schemas.series import load_series
from src.services import series as ts
from src.services.bell import BellCache
from src.services.fdb import (
    FaaDiBrunoService,
    exp_outer_series,
    fdb_1d,
    fdb_all,
    fdb_combinatorial_1d,
    fdb_derivative,
    fdb_series,
)
from src.services.verification import random_series, random_vector
from tests.conftest import scalar_series

M = MultiIndex.of


@pytest.fixture
def pair_1d(fixtures_dir):
    return load_series(fixtures_dir / "f_1d.json"), load_series(fixtures_dir / "g_1d.json")


@pytest.fixture
def pair_2d(fixtures_dir):
    return load_series(fixtures_dir / "f_2d.json"), load_series(fixtures_dir / "g_2d.json")


class TestOneDimensional:
    """Scalar compositions against hand-computed values."""

    def test_zeroth_derivative_is_outer_value(self, engine, pair_1d):
        """n = 0 gives f(g0)."""
        f, g = pair_1d
        assert engine.derivative(f, g, M(0)) == (2,)

    @pytest.mark.parametrize(
        "n,expected", [(1, Fraction(3, 2)), (2, Fraction(109, 12)), (3, Fraction(-31, 8))]
    )
    def test_fixture_values(self, engine, pair_1d, n, expected):
        """f1 g1, f1 g2 + f2 g1^2, f1 g3 + 3 f2 g1 g2 + f3 g1^3."""
        f, g = pair_1d
        assert engine.derivative(f, g, M(n)) == (expected,)
        assert engine.derivative_1d(f, g, n) == expected
        assert engine.combinatorial_1d(f, g, n) == expected

    def test_all_ones_gives_bell_numbers(self, engine):
        """With every derivative equal to one, the n-th derivative is B_n."""
        g = scalar_series([1] * 5)
        f = scalar_series([1] * 5, center=1)
        assert [engine.derivative_1d(f, g, n) for n in range(5)] == [1, 1, 2, 5, 15]

    def test_random_instances(self, engine, rng):
        """Three paths agree on random scalar series, n <= 6."""
        for _ in range(20):
            g = random_series(rng, 1, 1, 6)
            f = random_series(rng, 1, 1, 6, center=g.value)
            oracle = ts.compose_oracle(f, g)
            for n in range(7):
                expected = oracle.coefficient(M(n))[0]
                assert engine.derivative_1d(f, g, n) == expected
                assert engine.combinatorial_1d(f, g, n) == expected
                assert engine.derivative(f, g, M(n)) == (expected,)

    def test_scalar_paths_reject_vectors(self, engine, pair_2d):
        """The one-dimensional entry points need d1 = d2 = d3 = 1."""
        f, g = pair_2d
        with pytest.raises(ContractError):
            engine.derivative_1d(f, g, 1)
        with pytest.raises(ContractError):
            engine.combinatorial_1d(f, g, 1)


class TestMultivariate:
    """Vector compositions."""

    def test_mixed_second_derivative(self, engine, pair_2d):
        """d^2/dx dy f(g) = sum_i f_i g_i,xy + sum_ab f_ab g_a,x g_b,y."""
        f, g = pair_2d
        assert engine.derivative(f, g, M(1, 1)) == (Fraction(17, 4),)
        assert engine.derivative(f, g, M(1, 0)) == (-1,)

    def test_identity_outer(self, engine, fixtures_dir, pair_2d):
        """id(g) has the derivatives of g."""
        _, g = pair_2d
        identity = load_series(fixtures_dir / "identity_2d.json")
        for n in enumerate_upto(2, 3):
            assert engine.derivative(identity, g, n) == g.coefficient(n)

    @pytest.mark.parametrize("dims", [(1, 2, 1), (2, 1, 2), (2, 2, 1), (3, 2, 2), (2, 3, 1)])
    def test_matches_substitution(self, engine, rng, dims):
        """Every derivative agrees with direct substitution."""
        d1, d2, d3 = dims
        for _ in range(3):
            g = random_series(rng, d1, d2, 4)
            f = random_series(rng, d2, d3, 4, center=g.value)
            oracle = ts.compose_oracle(f, g)
            tensor = engine.all(f, g, 4)
            for n in enumerate_upto(d1, 4):
                assert tensor[n] == oracle.coefficient(n), f"dims={dims} n={n}"
            assert engine.series(f, g) == oracle

    @pytest.mark.parametrize(
        "dims", [(3, 3, 2), (3, 3, 1), (2, 3, 2), (3, 2, 2), (1, 3, 1)]
    )
    def test_matches_substitution_order_five(self, engine, dims):
        """Ten random pairs per shape, every |n| <= 5, up to three dimensions."""
        d1, d2, d3 = dims
        rng = np.random.default_rng([5, d1, d2, d3])
        for _ in range(10):
            g = random_series(rng, d1, d2, 5)
            f = random_series(rng, d2, d3, 5, center=g.value)
            oracle = ts.compose_oracle(f, g)
            tensor = engine.all(f, g, 5)
            for n in enumerate_upto(d1, 5):
                assert tensor[n] == oracle.coefficient(n), f"dims={dims} n={n}"

    def test_order_zero_tensor(self, engine, pair_2d):
        """N = 0 holds only f(g0)."""
        f, g = pair_2d
        tensor = engine.all(f, g, 0)
        assert len(tensor) == 1
        assert tensor[M(0, 0)] == (2,)

    def test_linear_in_outer_series(self, engine, rng):
        """(a f + b h)(g) = a f(g) + b h(g)."""
        g = random_series(rng, 2, 2, 3)
        f = random_series(rng, 2, 1, 3, center=g.value)
        h = random_series(rng, 2, 1, 3, center=g.value)
        a, b = Fraction(2, 3), Fraction(-5)
        combined = ts.add(ts.scale(f, a), ts.scale(h, b))
        for n in enumerate_upto(2, 3):
            lhs = engine.derivative(combined, g, n)[0]
            rhs = a * engine.derivative(f, g, n)[0] + b * engine.derivative(h, g, n)[0]
            assert lhs == rhs

    def test_threaded_evaluation(self, rng):
        """Worker threads give the same tensor."""
        g = random_series(rng, 2, 2, 4)
        f = random_series(rng, 2, 2, 4, center=g.value)
        serial = FaaDiBrunoService(cache=BellCache(enabled=True), workers=1).all(f, g, 4)
        threaded = FaaDiBrunoService(cache=BellCache(enabled=True), workers=3).all(f, g, 4)
        assert serial == threaded

    def test_cache_is_reused(self, pair_2d):
        """A second evaluation hits the cache."""
        f, g = pair_2d
        engine = FaaDiBrunoService(cache=BellCache(enabled=True), workers=1)
        engine.all(f, g, 3)
        misses = engine.cache.misses
        engine.all(f, g, 3)
        assert engine.cache.misses == misses
        assert engine.cache.hits > 0


class TestPreconditions:
    """Shape, center and order checks."""

    def test_dimension_mismatch(self, engine, pair_1d, pair_2d):
        """f.d_in must equal g.d_out, and n must have dimension d1."""
        f1, _ = pair_1d
        f2, g2 = pair_2d
        with pytest.raises(DimensionError):
            engine.derivative(f1, g2, M(1, 0))
        with pytest.raises(DimensionError):
            engine.derivative(f2, g2, M(1))

    def test_center_mismatch(self, engine, pair_1d):
        """f has to be expanded at g(center)."""
        _, g = pair_1d
        f = scalar_series([1, 2, 3, 4], center=0)
        with pytest.raises(ContractError) as excinfo:
            engine.derivative(f, g, M(1))
        assert excinfo.value.precondition == "f.center = g(center)"

    def test_order_too_high(self, engine, pair_1d, pair_2d):
        """Derivatives above either order are unavailable."""
        f, g = pair_1d
        with pytest.raises(TruncationError):
            engine.derivative(f, g, M(4))
        with pytest.raises(TruncationError):
            engine.all(*pair_2d, 4)

    def test_negative_order(self, engine, pair_2d):
        """order < 0 is a contract violation."""
        with pytest.raises(ContractError):
            engine.all(*pair_2d, -1)


class TestGeneratingIdentity:
    """sum_k B_{n,k}(g) u^k against exp(u . (g - g0))."""

    def test_constant_inner_series(self, engine):
        """A constant g only contributes at n = 0."""
        g = ts.constant((3, 4), (0, 0), 3)
        report = engine.generating_identity(g, (1, 2), 3)
        assert report.passed
        assert report.max_abs_n == 3

    def test_zero_vector(self, engine, pair_2d):
        """u = 0 leaves only the constant 1."""
        _, g = pair_2d
        assert engine.generating_identity(g, (0, 0), 3).passed

    def test_random_two_dimensional(self, engine, rng):
        """d1 = d2 = 2, u = (1, 1/2), up to |n| = 4."""
        for _ in range(3):
            g = random_series(rng, 2, 2, 4)
            assert engine.generating_identity(g, (1, Fraction(1, 2)), 4).passed

    def test_random_vectors(self, engine, rng):
        """Random u and mixed dimensions."""
        for d1, d2 in [(1, 3), (3, 1), (2, 2)]:
            g = random_series(rng, d1, d2, 3)
            assert engine.generating_identity(g, random_vector(rng, d2), 3).passed

    def test_checks_shapes(self, engine, pair_2d):
        """u must have length d2 and the order must be available."""
        _, g = pair_2d
        with pytest.raises(DimensionError):
            engine.generating_identity(g, (1,), 2)
        with pytest.raises(TruncationError):
            engine.generating_identity(g, (1, 1), 4)

    def test_exponential_outer_series(self, engine, pair_2d):
        """Composing exp(u . y) reproduces the exponential side."""
        _, g = pair_2d
        u = (Fraction(1, 3), 2)
        outer = exp_outer_series(u, g.value, 3)
        shifted = ts.sub(g, ts.constant(g.value, g.center, 3))
        assert engine.series(outer, g) == ts.exp_series(ts.dot(u, shifted))

    def test_exp_outer_derivatives(self):
        """The k-th derivative of exp(u . (y - c)) at c is u^k."""
        outer = exp_outer_series((2, 3), (0, 0), 2)
        assert outer.coefficient(M(1, 1)) == (6,)
        assert outer.coefficient(M(0, 2)) == (9,)
        with pytest.raises(DimensionError):
            exp_outer_series((1,), (0, 0), 2)


class TestModuleFunctions:
    """The process-wide engine entry points."""

    def test_shared_engine(self, pair_1d, pair_2d):
        """Module functions delegate to one shared engine."""
        f, g = pair_1d
        assert fdb_derivative(f, g, M(3)) == (Fraction(-31, 8),)
        assert fdb_1d(f, g, 2) == fdb_combinatorial_1d(f, g, 2) == Fraction(109, 12)
        f2, g2 = pair_2d
        assert len(fdb_all(f2, g2, 2)) == 6
        assert isinstance(fdb_series(f2, g2), TaylorSeries)
