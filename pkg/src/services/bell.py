"""Partial and complete Bell polynomials, one-dimensional and multivariate.

B_{n,k}(x_j; j) = n! * sum over K_{n,k} of prod_j (1/k_j!) (x_j / j!)^{k_j}

so the monomial belonging to an assignment j -> k_j has coefficient
n! / prod_j (k_j! (j!)^{|k_j|}). Coefficients are computed as exact rationals
and must come out integral; anything else raises IntegralityError.
"""

import logging
import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Union

from src.config import get_settings
from src.exceptions import ContractError, DimensionError, IntegralityError
from src.models.assignment import SolutionAssignment
from src.models.multiindex import MultiIndex, enumerate_graded, vec_pow
from src.models.polynomial import Monomial, SparsePoly, VarId
from src.models.series import TaylorSeries
from src.services.partitions import solve_1d, solve_complete, solve_partial

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def _monomial_of(assignment: SolutionAssignment) -> Monomial:
    powers = []
    for j, kj in assignment.support:
        for i, exp in enumerate(kj, start=1):
            if exp:
                powers.append((VarId(j, i), exp))
    return Monomial(tuple(powers))


def _coefficient_of(n: MultiIndex, assignment: SolutionAssignment) -> Fraction:
    denominator = math.prod(
        kj.factorial() * j.factorial() ** abs(kj) for j, kj in assignment.support
    )
    return Fraction(n.factorial(), denominator)


def _assemble(
    n: MultiIndex, k: Optional[MultiIndex], d2: int, assignments: Sequence[SolutionAssignment]
) -> SparsePoly:
    terms = []
    for assignment in assignments:
        mono = _monomial_of(assignment)
        coeff = _coefficient_of(n, assignment)
        if coeff.denominator != 1:
            logger.error(f"Non-integral Bell coefficient {coeff} at n={n}, k={k}: {mono.render(d2)}")
            raise IntegralityError(n, k, mono.render(d2), coeff)
        terms.append((mono, coeff))
    return SparsePoly(n.dim, d2, tuple(terms))


def bell_partial_mv(n: MultiIndex, k: MultiIndex, d2: Optional[int] = None) -> SparsePoly:
    """The partial multivariate Bell polynomial B_{n,k}."""
    if d2 is not None and d2 != k.dim:
        raise DimensionError(f"d2={d2} disagrees with k={k} of dimension {k.dim}")
    return _assemble(n, k, k.dim, solve_partial(n, k))


def bell_complete_mv(n: MultiIndex, d2: int) -> SparsePoly:
    """The complete multivariate Bell polynomial B_n."""
    return _assemble(n, None, d2, solve_complete(n, d2))


def _var_1d(j: int) -> VarId:
    return VarId(MultiIndex((j,)), 1)


def _assemble_1d(n: int, tuples: Sequence[tuple[int, ...]]) -> SparsePoly:
    terms = []
    for t in tuples:
        mono = Monomial(tuple((_var_1d(j), kj) for j, kj in enumerate(t, start=1) if kj))
        coeff = Fraction(
            math.factorial(n),
            math.prod(math.factorial(kj) * math.factorial(j) ** kj for j, kj in enumerate(t, start=1)),
        )
        if coeff.denominator != 1:
            raise IntegralityError(n, None, str(mono.powers), coeff)
        terms.append((mono, coeff))
    return SparsePoly(1, 1, tuple(terms))


def bell_partial_1d(n: int, k: int) -> SparsePoly:
    """The classical partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1})."""
    if n < 0 or k < 0:
        raise ContractError("n and k must be nonnegative", "n, k >= 0")
    return _assemble_1d(n, solve_1d(n, k))


def bell_complete_1d(n: int) -> SparsePoly:
    """The classical complete Bell polynomial B_n(x_1, ..., x_n)."""
    if n < 0:
        raise ContractError("n must be nonnegative", "n >= 0")
    return _assemble_1d(n, solve_1d(n))


def evaluate(p: SparsePoly, assignment: Mapping[VarId, Scalar]) -> Fraction:
    """Exact evaluation of a polynomial."""
    return p.evaluate(assignment)


def ones_assignment(p: SparsePoly) -> dict[VarId, Fraction]:
    """Every variable of p mapped to 1."""
    return {v: Fraction(1) for v in p.variables()}


def assignment_from_series(g: TaylorSeries) -> dict[VarId, Fraction]:
    """x_{j,i} -> i-th component of g^(j)(center), for 1 <= |j| <= order."""
    values: dict[VarId, Fraction] = {}
    for j in enumerate_graded(g.d_in, g.order):
        coeff = g.coefficient(j)
        for i in range(g.d_out):
            values[VarId(j, i + 1)] = coeff[i]
    return values


def scale_vars(
    n: MultiIndex, k: MultiIndex, d2: int, a: Sequence[Scalar], b: Scalar
) -> SparsePoly:
    """B_{n,k}(a^j b x_j; j): each x_{j,i} replaced by (a^j b) x_{j,i}."""
    if len(a) != n.dim:
        raise DimensionError(f"Scaling vector has length {len(a)}, expected d1={n.dim}")
    base = bell_partial_mv(n, k, d2)
    b = Fraction(b)
    return base.substitute_scaled(lambda var: vec_pow(a, var.j) * b)


def reduce_single_axis(
    n: int, k: int, alpha: int, beta: int, d1: int, d2: int
) -> tuple[SparsePoly, SparsePoly]:
    """Both sides of the single-axis reduction.

    Returns (B_{n e_alpha, k e_beta}, B_{n,k} with x_j renamed to x_{j e_alpha, beta}).
    alpha and beta are 1-based axes; the two polynomials are expected to be equal.
    """
    if not (1 <= alpha <= d1 and 1 <= beta <= d2):
        raise ContractError(f"Axes ({alpha}, {beta}) outside dimensions ({d1}, {d2})", "1 <= axis <= d")
    e_alpha = MultiIndex.unit(d1, alpha - 1)
    e_beta = MultiIndex.unit(d2, beta - 1)
    multivariate = bell_partial_mv(e_alpha.scale(n), e_beta.scale(k), d2)
    transported = bell_partial_1d(n, k).rename(
        lambda var: VarId(e_alpha.scale(var.j[0]), beta), d1, d2
    )
    return multivariate, transported


@lru_cache(maxsize=4096)
def _recursive(n: MultiIndex, k: MultiIndex) -> SparsePoly:
    d1, d2 = n.dim, k.dim
    if n.is_zero():
        return SparsePoly.one(d1, d2) if k.is_zero() else SparsePoly.zero(d1, d2)
    if k.is_zero() or abs(k) > abs(n):
        return SparsePoly.zero(d1, d2)
    axis = next(i for i, e in enumerate(n) if e > 0)
    e = MultiIndex.unit(d1, axis)
    m = n - e
    result = _recursive(m, k).derive(e)
    for i in range(d2):
        if k[i] > 0:
            step = SparsePoly.variable(VarId(e, i + 1), d1, d2)
            result = result + step * _recursive(m, k - MultiIndex.unit(d2, i))
    return result


def bell_partial_recursive(n: MultiIndex, k: MultiIndex, d2: Optional[int] = None) -> SparsePoly:
    """B_{n,k} built by the chain-rule recurrence instead of the solution sets.

    P_{n,k} = sum_{i: k_i > 0} x_{e,i} P_{n-e, k-e_i} + D_e P_{n-e, k}
    for any unit e <= n, where D_e shifts every variable index by e.
    """
    if d2 is not None and d2 != k.dim:
        raise DimensionError(f"d2={d2} disagrees with k={k}")
    return _recursive(n, k)


class BellCache:
    """Memo of partial Bell polynomials keyed by (n, k).

    Lookups and inserts are serialized by a lock; construction runs outside
    it and the first stored polynomial wins, so every caller sees the same
    object for a key. With the cache disabled every call constructs afresh.
    At most max_entries polynomials are kept; the oldest insert goes first.
    """

    def __init__(self, enabled: Optional[bool] = None, max_entries: Optional[int] = None):
        settings = get_settings()
        self.enabled = settings.bell_cache_enabled if enabled is None else enabled
        self.max_entries = settings.bell_cache_size if max_entries is None else max_entries
        if self.max_entries < 1:
            raise ContractError(f"max_entries must be >= 1, got {self.max_entries}", "max_entries >= 1")
        self._lock = threading.Lock()
        self._entries: dict[tuple[MultiIndex, MultiIndex], SparsePoly] = {}
        self.hits = 0
        self.misses = 0

    def partial(self, n: MultiIndex, k: MultiIndex) -> SparsePoly:
        if not self.enabled:
            return bell_partial_mv(n, k)
        key = (n, k)
        with self._lock:
            cached = self._entries.get(key)
            if cached is not None:
                self.hits += 1
                return cached
            self.misses += 1
        poly = bell_partial_mv(n, k)
        with self._lock:
            if key not in self._entries and len(self._entries) >= self.max_entries:
                del self._entries[next(iter(self._entries))]
            return self._entries.setdefault(key, poly)

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.hits = self.misses = 0


def render_bell_table(max_n: int) -> str:
    """Complete 1-D Bell polynomials B_1..B_max_n, one column per part count k."""
    if max_n < 1:
        raise ContractError("max_n must be >= 1", "max_n >= 1")
    cells = [
        [bell_partial_1d(n, k).render_compact() if k <= n else "" for k in range(1, max_n + 1)]
        for n in range(1, max_n + 1)
    ]
    widths = [
        max(len(f"k={k}"), *(len(row[k - 1]) for row in cells)) for k in range(1, max_n + 1)
    ]
    label_width = len(f"B{max_n} =")

    header = " " * (label_width + 1) + "   ".join(
        f"k={k}".ljust(widths[k - 1]) for k in range(1, max_n + 1)
    )
    lines = [header.rstrip()]
    for n, row in enumerate(cells, start=1):
        line = f"B{n} =".ljust(label_width) + " " + row[0].ljust(widths[0])
        for cell, width in zip(row[1:], widths[1:]):
            line += (" + " if cell else "   ") + cell.ljust(width)
        lines.append(line.rstrip())
    return "\n".join(lines) + "\n"
