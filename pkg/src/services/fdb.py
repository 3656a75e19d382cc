"""Faa di Bruno engine: derivatives of f(g(x)) from Bell polynomials.

For f: F^d2 -> F^d3 expanded at g0 = g(u0) and g: F^d1 -> F^d2 expanded at u0,

    d^n/dx^n f(g(x)) |_{u0} = sum_{k in N^d2, |k| <= |n|} f^(k)(g0) * B_{n,k}(g^(j)(u0); j)

Every k with |k| <= |n| takes part; terms with |k| > |n| vanish because the
solution set is empty there.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from src.config import get_settings
from src.exceptions import ContractError, DimensionError, TruncationError
from src.models.multiindex import MultiIndex, enumerate_upto, vec_pow
from src.models.polynomial import VarId
from src.models.series import Scalar, TaylorSeries, Vector, to_vector
from src.models.tensor import DerivTensor
from src.schemas.fdb import GenfunReport, Mismatch
from src.services import series as ts
from src.services.bell import BellCache, assignment_from_series, bell_partial_1d
from src.services.partitions import enumerate_tuples_1d, multinomial_1d

logger = logging.getLogger(__name__)


class FaaDiBrunoService:
    """Composition derivatives with a shared Bell polynomial cache."""

    def __init__(self, cache: Optional[BellCache] = None, workers: Optional[int] = None):
        self.cache = cache if cache is not None else BellCache()
        self.workers = workers if workers is not None else get_settings().fdb_workers

    # -- preconditions ----------------------------------------------------

    def _check_pair(self, f: TaylorSeries, g: TaylorSeries, top: int) -> None:
        if f.d_in != g.d_out:
            raise DimensionError(
                f"Outer input dimension {f.d_in} != inner output dimension {g.d_out}"
            )
        if f.center != g.value:
            raise ContractError(
                "Outer series must be expanded at the inner value g(center)",
                "f.center = g(center)",
            )
        available = min(f.order, g.order)
        if top > available:
            raise TruncationError(
                f"Derivative of order {top} needs series of order >= {top}, "
                f"have f.order={f.order}, g.order={g.order}"
            )

    def _evaluate(
        self, f: TaylorSeries, n: MultiIndex, values: dict[VarId, Fraction]
    ) -> Vector:
        total = [Fraction(0)] * f.d_out
        for k in enumerate_upto(f.d_in, abs(n)):
            fk = f.coefficient(k)
            if not any(fk):
                continue
            weight = self.cache.partial(n, k).evaluate(values)
            if weight == 0:
                continue
            for i in range(f.d_out):
                total[i] += fk[i] * weight
        return tuple(total)

    # -- multivariate -----------------------------------------------------

    def derivative(self, f: TaylorSeries, g: TaylorSeries, n: MultiIndex) -> Vector:
        """The n-th derivative of f(g(x)) at g.center, a vector of length f.d_out."""
        if n.dim != g.d_in:
            raise DimensionError(f"Multi-index {n} does not match d1={g.d_in}")
        self._check_pair(f, g, abs(n))
        return self._evaluate(f, n, assignment_from_series(g))

    def all(self, f: TaylorSeries, g: TaylorSeries, order: int) -> DerivTensor:
        """Every derivative with |n| <= order."""
        if order < 0:
            raise ContractError("order must be >= 0", "order >= 0")
        self._check_pair(f, g, order)
        values = assignment_from_series(g)
        keys = enumerate_upto(g.d_in, order)
        start = time.perf_counter()
        if self.workers > 1 and len(keys) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                vectors = list(pool.map(lambda n: self._evaluate(f, n, values), keys))
        else:
            vectors = [self._evaluate(f, n, values) for n in keys]
        logger.debug(
            f"Evaluated {len(keys)} derivatives up to order {order} "
            f"in {(time.perf_counter() - start) * 1000:.1f} ms (workers={self.workers})"
        )
        return DerivTensor(g.d_in, f.d_out, order, dict(zip(keys, vectors)))

    def series(self, f: TaylorSeries, g: TaylorSeries, order: Optional[int] = None) -> TaylorSeries:
        """Taylor expansion of f(g(x)) about g.center assembled from the derivatives."""
        order = min(f.order, g.order) if order is None else order
        tensor = self.all(f, g, order)
        return TaylorSeries(g.d_in, f.d_out, order, g.center, tensor.values)

    def generating_identity(
        self, g: TaylorSeries, u: Sequence[Scalar], order: int
    ) -> GenfunReport:
        """Compare sum_k B_{n,k}(g_j; j) u^k with the exponential side, coefficientwise."""
        u = to_vector(u)
        if len(u) != g.d_out:
            raise DimensionError(f"Vector u has length {len(u)}, expected d2={g.d_out}")
        if order > g.order:
            raise TruncationError(f"Order {order} exceeds series order {g.order}")
        if order < 0:
            raise ContractError("order must be >= 0", "order >= 0")
        g = ts.truncate(g, order)
        shifted = ts.sub(g, ts.constant(g.value, g.center, order))
        rhs = ts.exp_series(ts.dot(u, shifted))
        values = assignment_from_series(g)

        mismatches = []
        for n in enumerate_upto(g.d_in, order):
            lhs = sum(
                (
                    self.cache.partial(n, k).evaluate(values) * vec_pow(u, k)
                    for k in enumerate_upto(g.d_out, abs(n))
                ),
                Fraction(0),
            )
            rhs_n = rhs.coefficient(n)[0]
            if lhs != rhs_n:
                mismatches.append(Mismatch(n=n.to_json(), lhs=str(lhs), rhs=str(rhs_n)))
        if mismatches:
            logger.warning(f"Generating identity failed at {len(mismatches)} coefficients")
        return GenfunReport(max_abs_n=order, mismatches=mismatches)

    # -- one-dimensional --------------------------------------------------

    @staticmethod
    def _check_scalar(f: TaylorSeries, g: TaylorSeries) -> None:
        dims = (g.d_in, g.d_out, f.d_in, f.d_out)
        if dims != (1, 1, 1, 1):
            raise ContractError(
                f"One-dimensional path needs scalar series, got dims {dims}", "d1 = d2 = d3 = 1"
            )

    def derivative_1d(self, f: TaylorSeries, g: TaylorSeries, n: int) -> Fraction:
        """sum_k f^(k)(g0) B_{n,k}(g', g'', ...) with the classical Bell polynomials."""
        self._check_scalar(f, g)
        if n < 0:
            raise ContractError("n must be >= 0", "n >= 0")
        self._check_pair(f, g, n)
        values = assignment_from_series(g)
        return sum(
            (
                f.coefficient(MultiIndex.of(k))[0] * bell_partial_1d(n, k).evaluate(values)
                for k in range(n + 1)
            ),
            Fraction(0),
        )

    def combinatorial_1d(self, f: TaylorSeries, g: TaylorSeries, n: int) -> Fraction:
        """The same derivative summed over multiplicity tuples, without Bell polynomials."""
        self._check_scalar(f, g)
        if n < 0:
            raise ContractError("n must be >= 0", "n >= 0")
        self._check_pair(f, g, n)
        total = Fraction(0)
        for t in enumerate_tuples_1d(n):
            fk = f.coefficient(MultiIndex.of(sum(t)))[0]
            gs = math.prod(
                (g.coefficient(MultiIndex.of(j))[0] ** kj for j, kj in enumerate(t, start=1)),
                start=Fraction(1),
            )
            total += multinomial_1d(n, t) * fk * gs
        return total


def exp_outer_series(u: Sequence[Scalar], center: Sequence[Scalar], order: int) -> TaylorSeries:
    """y -> exp(u . (y - center)); its k-th derivative at the center is u^k."""
    u = to_vector(u)
    if len(u) != len(center):
        raise DimensionError(f"u has length {len(u)}, center has length {len(center)}")
    coeffs = {k: (vec_pow(u, k),) for k in enumerate_upto(len(u), order)}
    return TaylorSeries(len(u), 1, order, center, coeffs)


@lru_cache
def get_fdb_service() -> FaaDiBrunoService:
    """Process-wide engine sharing one Bell cache."""
    return FaaDiBrunoService()


def fdb_derivative(f: TaylorSeries, g: TaylorSeries, n: MultiIndex) -> Vector:
    return get_fdb_service().derivative(f, g, n)


def fdb_all(f: TaylorSeries, g: TaylorSeries, order: int) -> DerivTensor:
    return get_fdb_service().all(f, g, order)


def fdb_series(f: TaylorSeries, g: TaylorSeries, order: Optional[int] = None) -> TaylorSeries:
    return get_fdb_service().series(f, g, order)


def check_generating_identity(g: TaylorSeries, u: Sequence[Scalar], order: int) -> GenfunReport:
    return get_fdb_service().generating_identity(g, u, order)


def fdb_1d(f: TaylorSeries, g: TaylorSeries, n: int) -> Fraction:
    return get_fdb_service().derivative_1d(f, g, n)


def fdb_combinatorial_1d(f: TaylorSeries, g: TaylorSeries, n: int) -> Fraction:
    return get_fdb_service().combinatorial_1d(f, g, n)
