"""Randomized and exhaustive verification suites.

Each suite is a list of named checks. A check returns None when it holds and
a short description of the counterexample otherwise. Trials run on worker
threads; each draws from its own generator seeded with (seed, trial), so the
report does not depend on scheduling.
"""

import asyncio
import logging
import time
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from src.config import get_settings
from src.exceptions import BellFdbError
from src.models.multiindex import MultiIndex, enumerate_grade, enumerate_upto
from src.models.polynomial import Monomial, SparsePoly, VarId
from src.models.series import TaylorSeries
from src.schemas.verify import CheckFailure, SuiteName, VerifyReport
from src.services import series as ts
from src.services.bell import (
    bell_complete_1d,
    bell_complete_mv,
    bell_partial_1d,
    bell_partial_mv,
    bell_partial_recursive,
    ones_assignment,
    reduce_single_axis,
    scale_vars,
)
from src.services.fdb import FaaDiBrunoService, exp_outer_series
from src.services.partitions import (
    bell_number,
    block_type_counts,
    brute_force_solutions,
    count_set_partitions,
    solve_partial,
)
from src.services.tracing import TracingService

logger = logging.getLogger(__name__)

Check = Callable[[], Optional[str]]
NamedCheck = tuple[str, Check]


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------

def random_rational(rng: np.random.Generator, bound: int = 5) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound)))


def random_vector(rng: np.random.Generator, d: int) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng) for _ in range(d))


def random_series(
    rng: np.random.Generator,
    d_in: int,
    d_out: int,
    order: int,
    center: Optional[Sequence[Fraction]] = None,
    value: Optional[Sequence[Fraction]] = None,
) -> TaylorSeries:
    """A series with random rational derivatives; about a fifth of them are zero."""
    center = random_vector(rng, d_in) if center is None else tuple(center)
    coeffs = {}
    for n in enumerate_upto(d_in, order):
        if n.is_zero() and value is not None:
            coeffs[n] = tuple(value)
        elif rng.random() < 0.8:
            coeffs[n] = random_vector(rng, d_out)
    return TaylorSeries(d_in, d_out, order, center, coeffs)


def random_index(rng: np.random.Generator, d: int, modulus: int) -> MultiIndex:
    options = enumerate_grade(d, modulus)
    return options[int(rng.integers(len(options)))]


def _dim(rng: np.random.Generator, low: int, high: int) -> int:
    return int(rng.integers(low, high + 1))


def _diff(name: str, lhs, rhs) -> Optional[str]:
    return None if lhs == rhs else f"{name}: {lhs} != {rhs}"


# ---------------------------------------------------------------------------
# Service
# ---------------------------------------------------------------------------

class VerificationService:
    """Runs the oracle, genfun and props suites."""

    def __init__(
        self,
        fdb: Optional[FaaDiBrunoService] = None,
        concurrency: Optional[int] = None,
        order: Optional[int] = None,
    ):
        settings = get_settings()
        self.fdb = fdb if fdb is not None else FaaDiBrunoService()
        self.concurrency = concurrency or settings.verify_concurrency
        self.order = order or settings.verify_order
        self.last_trace: Optional[dict] = None

    async def run_suite(
        self, suite: SuiteName, seed: Optional[int] = None, trials: Optional[int] = None
    ) -> VerifyReport:
        """Run a suite and collect every failed check."""
        settings = get_settings()
        seed = settings.verify_seed if seed is None else seed
        trials = settings.verify_trials if trials is None else trials
        if suite not in SUITES:
            raise BellFdbError(f"Unknown suite: {suite}")
        trial_builder, fixed_builder = SUITES[suite]

        tracer = TracingService(suite)
        semaphore = asyncio.Semaphore(self.concurrency)

        async def run_trial(trial: int) -> tuple[int, list[CheckFailure]]:
            async with semaphore:
                rng = np.random.default_rng([seed, trial])
                checks = trial_builder(self, rng)
                return await asyncio.to_thread(self._run_checks, tracer, checks, trial)

        logger.info(f"Running suite {suite} (seed={seed}, trials={trials})")
        results = await asyncio.gather(*(run_trial(t) for t in range(trials)))

        checks = sum(count for count, _ in results)
        failed = [failure for _, failures in results for failure in failures]
        if fixed_builder is not None:
            count, failures = await asyncio.to_thread(
                self._run_checks, tracer, fixed_builder(self), None
            )
            checks += count
            failed.extend(failures)

        summary = self.last_trace = tracer.get_summary()
        logger.info(
            f"Suite {suite}: {checks} checks, {len(failed)} failures, "
            f"p95 {summary['latency_p95_ms']:.1f} ms"
        )
        return VerifyReport(
            suite=suite,
            seed=seed,
            trials=trials,
            checks=checks,
            failures=len(failed),
            failed=failed,
        )

    def _run_checks(
        self, tracer: TracingService, checks: list[NamedCheck], trial: Optional[int]
    ) -> tuple[int, list[CheckFailure]]:
        failures = []
        for name, check in checks:
            start = time.perf_counter()
            try:
                detail = check()
            except Exception as e:
                logger.error(f"Check {name} raised: {e}")
                tracer.log_error(name, e, trial)
                detail = f"{type(e).__name__}: {e}"
            else:
                duration_ms = (time.perf_counter() - start) * 1000
                tracer.log_check(name, detail is None, duration_ms, trial, detail or "")
            if detail is not None:
                where = "exhaustive" if trial is None else f"trial {trial}"
                failures.append(CheckFailure(name=name, detail=f"{where}: {detail}"))
        return len(checks), failures

    # -- oracle -------------------------------------------------------------

    def oracle_checks(self, rng: np.random.Generator) -> list[NamedCheck]:
        d1, d2, d3 = _dim(rng, 1, 3), _dim(rng, 1, 3), _dim(rng, 1, 2)
        order = self.order
        g = random_series(rng, d1, d2, order)
        f = random_series(rng, d2, d3, order, center=g.value)
        f2 = random_series(rng, d2, d3, order, center=g.value)
        a, b = random_rational(rng), random_rational(rng)
        n = random_index(rng, d1, _dim(rng, 0, order))

        g1 = random_series(rng, 1, 1, order)
        f1 = random_series(rng, 1, 1, order, center=g1.value)
        n1 = _dim(rng, 0, order)

        def oracle_equivalence() -> Optional[str]:
            oracle = ts.compose_oracle(f, g)
            tensor = self.fdb.all(f, g, order)
            for m in enumerate_upto(d1, order):
                if tensor[m] != oracle.coefficient(m):
                    return f"dims=({d1},{d2},{d3}) n={m}: {tensor[m]} != {oracle.coefficient(m)}"
            return None

        def series_matches_oracle() -> Optional[str]:
            return _diff(f"dims=({d1},{d2},{d3})", self.fdb.series(f, g), ts.compose_oracle(f, g))

        def linearity_in_f() -> Optional[str]:
            combined = ts.add(ts.scale(f, a), ts.scale(f2, b))
            lhs = self.fdb.derivative(combined, g, n)
            rhs = tuple(
                a * x + b * y
                for x, y in zip(self.fdb.derivative(f, g, n), self.fdb.derivative(f2, g, n))
            )
            return _diff(f"n={n}", lhs, rhs)

        def one_dimensional_paths() -> Optional[str]:
            mv = self.fdb.derivative(f1, g1, MultiIndex.of(n1))[0]
            return (
                _diff(f"n={n1} fdb_1d", self.fdb.derivative_1d(f1, g1, n1), mv)
                or _diff(f"n={n1} oracle", ts.compose_oracle(f1, g1).coefficient(MultiIndex.of(n1))[0], mv)
            )

        return [
            ("oracle_equivalence", oracle_equivalence),
            ("series_matches_oracle", series_matches_oracle),
            ("linearity_in_f", linearity_in_f),
            ("one_dimensional_paths", one_dimensional_paths),
        ]

    # -- genfun -------------------------------------------------------------

    def genfun_checks(self, rng: np.random.Generator) -> list[NamedCheck]:
        d1, d2 = _dim(rng, 1, 2), _dim(rng, 1, 2)
        order = min(4, self.order)
        g = random_series(rng, d1, d2, order)
        u = random_vector(rng, d2)

        def generating_identity() -> Optional[str]:
            report = self.fdb.generating_identity(g, u, order)
            if report.passed:
                return None
            first = report.mismatches[0]
            return f"{len(report.mismatches)} mismatches, first at n={first.n}: {first.lhs} != {first.rhs}"

        def exponential_outer_function() -> Optional[str]:
            outer = exp_outer_series(u, g.value, order)
            shifted = ts.sub(g, ts.constant(g.value, g.center, order))
            return _diff(f"u={u}", self.fdb.series(outer, g), ts.exp_series(ts.dot(u, shifted)))

        def zero_vector_gives_one() -> Optional[str]:
            report = self.fdb.generating_identity(g, (0,) * d2, order)
            return None if report.passed else f"{len(report.mismatches)} mismatches at u=0"

        return [
            ("generating_identity", generating_identity),
            ("exponential_outer_function", exponential_outer_function),
            ("zero_vector_gives_one", zero_vector_gives_one),
        ]

    # -- props --------------------------------------------------------------

    def props_checks(self, rng: np.random.Generator) -> list[NamedCheck]:
        d1, d2 = _dim(rng, 1, 3), _dim(rng, 1, 3)
        n = random_index(rng, d1, _dim(rng, 1, 4))
        k = random_index(rng, d2, _dim(rng, 1, abs(n)))
        a = random_vector(rng, d1)
        b = random_rational(rng)

        order = min(6, max(self.order, 1))
        g = random_series(rng, 1, 1, order)
        f = random_series(rng, 1, 1, order, center=g.value)
        m = _dim(rng, 0, order)

        def scaling() -> Optional[str]:
            factor = Fraction(1)
            for ai, ni in zip(a, n):
                factor *= ai ** ni
            expected = bell_partial_mv(n, k).scale(factor * b ** abs(k))
            return _diff(f"n={n} k={k} a={a} b={b}", scale_vars(n, k, d2, a, b), expected)

        def combinatorial_form() -> Optional[str]:
            return _diff(
                f"n={m}", self.fdb.derivative_1d(f, g, m), self.fdb.combinatorial_1d(f, g, m)
            )

        return [("scaling", scaling), ("combinatorial_form", combinatorial_form)]

    def props_exhaustive(self) -> list[NamedCheck]:
        return [
            ("empty_beyond_modulus", check_empty_beyond_modulus),
            ("support_bound", check_support_bound),
            ("search_matches_brute_force", check_search_matches_brute_force),
            ("zero_index", check_zero_index),
            ("complete_is_sum_of_partials", check_complete_is_sum_of_partials),
            ("integral_and_homogeneous", check_integral_and_homogeneous),
            ("recursive_construction", check_recursive_construction),
            ("single_axis_reduction", check_single_axis_reduction),
            ("agrees_with_classical", check_agrees_with_classical),
            ("set_partition_counts", check_set_partition_counts),
            ("block_type_counts", check_block_type_counts),
        ]


# ---------------------------------------------------------------------------
# Exhaustive structural checks
# ---------------------------------------------------------------------------

def _indices(max_modulus: int, max_dim: int, min_modulus: int = 0):
    for d in range(1, max_dim + 1):
        for n in enumerate_upto(d, max_modulus):
            if abs(n) >= min_modulus:
                yield n


def check_empty_beyond_modulus() -> Optional[str]:
    for n in _indices(5, 2):
        for d2 in (1, 2):
            for extra in (1, 2):
                for k in enumerate_grade(d2, abs(n) + extra):
                    if solve_partial(n, k) or not bell_partial_mv(n, k).is_zero():
                        return f"K(n={n}, k={k}) is not empty"
    return None


def check_support_bound() -> Optional[str]:
    for n in _indices(5, 2, min_modulus=1):
        for d2 in (1, 2):
            for k in enumerate_upto(d2, abs(n)):
                for a in solve_partial(n, k):
                    if a.weight() != n or a.part_count() != k:
                        return f"assignment {a} does not have weight {n} and parts {k}"
                    bound = abs(n) - abs(k) + 1
                    if any(abs(j) > bound for j, _ in a.support):
                        return f"assignment {a} uses |j| > {bound} for n={n}, k={k}"
    return None


def check_search_matches_brute_force() -> Optional[str]:
    for n in _indices(3, 2, min_modulus=1):
        for d2 in (1, 2):
            for k in enumerate_upto(d2, abs(n)):
                if solve_partial(n, k) != brute_force_solutions(n, k, d2):
                    return f"search and brute force disagree for n={n}, k={k}"
    return None


def check_zero_index() -> Optional[str]:
    for d1 in (1, 2, 3):
        for d2 in (1, 2, 3):
            zero1, zero2 = MultiIndex.zero(d1), MultiIndex.zero(d2)
            one = SparsePoly.one(d1, d2)
            if bell_partial_mv(zero1, zero2) != one or bell_complete_mv(zero1, d2) != one:
                return f"B_0 != 1 for d1={d1}, d2={d2}"
            for k in enumerate_grade(d2, 1):
                if not bell_partial_mv(zero1, k).is_zero():
                    return f"B(0, {k}) != 0"
            for n in enumerate_grade(d1, 2):
                if not bell_partial_mv(n, zero2).is_zero():
                    return f"B({n}, 0) != 0"
    return None


def check_complete_is_sum_of_partials() -> Optional[str]:
    for n in _indices(4, 2):
        for d2 in (1, 2):
            total = SparsePoly.zero(n.dim, d2)
            for k in enumerate_upto(d2, abs(n)):
                total = total + bell_partial_mv(n, k)
            if total != bell_complete_mv(n, d2):
                return f"complete polynomial differs from the sum of partials at n={n}, d2={d2}"
    return None


def check_integral_and_homogeneous() -> Optional[str]:
    for n in _indices(4, 2, min_modulus=1):
        for d2 in (1, 2):
            for k in enumerate_upto(d2, abs(n)):
                poly = bell_partial_mv(n, k)
                if not poly.is_integral():
                    return f"B({n}, {k}) has a non-integral coefficient"
                for mono, _ in poly.terms:
                    if mono.weight(n.dim) != n or mono.component_counts(d2) != k:
                        return f"B({n}, {k}) contains the inhomogeneous term {mono.render(d2)}"
    return None


def check_recursive_construction() -> Optional[str]:
    for n in _indices(4, 2):
        for d2 in (1, 2):
            for k in enumerate_upto(d2, abs(n)):
                if bell_partial_recursive(n, k) != bell_partial_mv(n, k):
                    return f"recursive construction differs at n={n}, k={k}"
    return None


def check_single_axis_reduction() -> Optional[str]:
    for d1 in (1, 2, 3):
        for d2 in (1, 2, 3):
            for alpha in range(1, d1 + 1):
                for beta in range(1, d2 + 1):
                    for n in range(6):
                        for k in range(n + 1):
                            lhs, rhs = reduce_single_axis(n, k, alpha, beta, d1, d2)
                            if lhs != rhs:
                                return (
                                    f"n={n}, k={k}, alpha={alpha}, beta={beta}, "
                                    f"d1={d1}, d2={d2}: {lhs} != {rhs}"
                                )
    return None


def check_agrees_with_classical() -> Optional[str]:
    for n in range(8):
        if bell_complete_mv(MultiIndex.of(n), 1) != bell_complete_1d(n):
            return f"complete polynomials differ at n={n}"
        for k in range(n + 1):
            if bell_partial_mv(MultiIndex.of(n), MultiIndex.of(k)) != bell_partial_1d(n, k):
                return f"partial polynomials differ at n={n}, k={k}"
    return None


def check_set_partition_counts() -> Optional[str]:
    for n in range(1, 9):
        poly = bell_complete_1d(n)
        value = poly.evaluate(ones_assignment(poly))
        brute = count_set_partitions(n)
        if value != brute or brute != bell_number(n):
            return f"n={n}: polynomial gives {value}, enumeration {brute}, triangle {bell_number(n)}"
    return None


def check_block_type_counts() -> Optional[str]:
    for n in range(1, 7):
        for k in range(1, n + 1):
            poly = bell_partial_1d(n, k)
            for block_type, count in block_type_counts(n, k).items():
                mono = Monomial(
                    tuple(
                        (VarId(MultiIndex.of(j), 1), kj)
                        for j, kj in enumerate(block_type, start=1)
                        if kj
                    )
                )
                if poly.coefficient(mono) != count:
                    return f"n={n}, k={k}, type {block_type}: {poly.coefficient(mono)} != {count}"
            if len(poly.terms) != len(block_type_counts(n, k)):
                return f"n={n}, k={k}: term count does not match block types"
    return None


SUITES: dict[str, tuple[Callable, Optional[Callable]]] = {
    "oracle": (VerificationService.oracle_checks, None),
    "genfun": (VerificationService.genfun_checks, None),
    "props": (VerificationService.props_checks, VerificationService.props_exhaustive),
}
