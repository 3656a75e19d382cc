"""Truncated Taylor series algebra and the direct-substitution composition.

Coefficients are derivatives at the center, so products follow the Leibniz
rule (st)_n = sum_{m <= n} C(n, m) s_m t_{n-m} rather than a plain Cauchy
convolution. Every operation truncates to the operands' common order.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from typing import Any, Optional, Sequence

from src.exceptions import ContractError, DimensionError, TruncationError
from src.models.multiindex import MultiIndex, enumerate_graded, enumerate_upto
from src.models.series import Scalar, TaylorSeries, Vector, to_vector
from src.schemas.series import SeriesDocument

logger = logging.getLogger(__name__)


def _check_compatible(s: TaylorSeries, t: TaylorSeries) -> None:
    if s.d_in != t.d_in:
        raise DimensionError(f"Input dimensions differ: {s.d_in} vs {t.d_in}")
    if s.center != t.center:
        raise ContractError(
            f"Centers differ: {_fmt(s.center)} vs {_fmt(t.center)}", "matching centers"
        )
    if s.order != t.order:
        raise ContractError(
            f"Truncation orders differ: {s.order} vs {t.order}", "matching orders"
        )


def _fmt(vec: Vector) -> str:
    return "(" + ", ".join(str(v) for v in vec) + ")"


def _with_coeffs(s: TaylorSeries, coeffs: dict, d_out: Optional[int] = None) -> TaylorSeries:
    return TaylorSeries(s.d_in, s.d_out if d_out is None else d_out, s.order, s.center, coeffs)


# -- constructors ------------------------------------------------------------


def constant(value: Sequence[Scalar], center: Sequence[Scalar], order: int) -> TaylorSeries:
    """The constant series with the given value."""
    center = to_vector(center)
    value = to_vector(value)
    return TaylorSeries(len(center), len(value), order, center, {MultiIndex.zero(len(center)): value})


def zero(d_in: int, d_out: int, order: int, center: Optional[Sequence[Scalar]] = None) -> TaylorSeries:
    return TaylorSeries(d_in, d_out, order, center if center is not None else (0,) * d_in, {})


def coordinate(axis: int, center: Sequence[Scalar], order: int) -> TaylorSeries:
    """The scalar series x_axis (0-based axis) expanded about center."""
    center = to_vector(center)
    d = len(center)
    coeffs: dict[MultiIndex, Vector] = {MultiIndex.zero(d): (center[axis],)}
    if order >= 1:
        coeffs[MultiIndex.unit(d, axis)] = (Fraction(1),)
    return TaylorSeries(d, 1, order, center, coeffs)


def identity(center: Sequence[Scalar], order: int) -> TaylorSeries:
    """x -> x about center; d_out = d_in."""
    center = to_vector(center)
    d = len(center)
    coeffs: dict[MultiIndex, Vector] = {MultiIndex.zero(d): center}
    if order >= 1:
        for axis in range(d):
            coeffs[MultiIndex.unit(d, axis)] = to_vector(MultiIndex.unit(d, axis).entries)
    return TaylorSeries(d, d, order, center, coeffs)


def component(s: TaylorSeries, i: int) -> TaylorSeries:
    """The i-th (0-based) output component as a scalar series."""
    if not 0 <= i < s.d_out:
        raise DimensionError(f"Component {i} outside d_out={s.d_out}")
    return _with_coeffs(s, {n: (v[i],) for n, v in s.coeffs.items()}, d_out=1)


def stack(parts: Sequence[TaylorSeries]) -> TaylorSeries:
    """Assemble scalar series into one vector-valued series."""
    if not parts:
        raise ContractError("Nothing to stack", "at least one component")
    first = parts[0]
    for p in parts:
        _check_compatible(first, p)
        if p.d_out != 1:
            raise DimensionError(f"Stacked series must be scalar, got d_out={p.d_out}")
    keys = set().union(*(p.coeffs for p in parts))
    coeffs = {n: tuple(p.coefficient(n)[0] for p in parts) for n in keys}
    return _with_coeffs(first, coeffs, d_out=len(parts))


def truncate(s: TaylorSeries, order: int) -> TaylorSeries:
    """Drop every coefficient above the given order."""
    if order > s.order:
        raise TruncationError(f"Cannot extend a series of order {s.order} to order {order}")
    if order < 0:
        raise ContractError("Truncation order must be >= 0", "order >= 0")
    kept = {n: v for n, v in s.coeffs.items() if abs(n) <= order}
    return TaylorSeries(s.d_in, s.d_out, order, s.center, kept)


# -- ring operations ---------------------------------------------------------


def add(s: TaylorSeries, t: TaylorSeries) -> TaylorSeries:
    _check_compatible(s, t)
    if s.d_out != t.d_out:
        raise DimensionError(f"Output dimensions differ: {s.d_out} vs {t.d_out}")
    coeffs = {
        n: tuple(a + b for a, b in zip(s.coefficient(n), t.coefficient(n)))
        for n in set(s.coeffs) | set(t.coeffs)
    }
    return _with_coeffs(s, coeffs)


def scale(s: TaylorSeries, c: Scalar) -> TaylorSeries:
    c = Fraction(c)
    return _with_coeffs(s, {n: tuple(c * x for x in v) for n, v in s.coeffs.items()})


def sub(s: TaylorSeries, t: TaylorSeries) -> TaylorSeries:
    return add(s, scale(t, -1))


def mul(s: TaylorSeries, t: TaylorSeries) -> TaylorSeries:
    """Product by the Leibniz rule; at least one factor must be scalar-valued.

    A scalar factor multiplies every component of the other one.
    """
    _check_compatible(s, t)
    if s.d_out != 1 and t.d_out != 1:
        raise ContractError(
            f"mul needs a scalar factor, got d_out={s.d_out} and d_out={t.d_out}",
            "one factor with d_out = 1",
        )
    d_out = max(s.d_out, t.d_out)
    acc: dict[MultiIndex, list[Fraction]] = defaultdict(lambda: [Fraction(0)] * d_out)
    for m, a in s.coeffs.items():
        for p, b in t.coeffs.items():
            n = m + p
            if abs(n) > s.order:
                continue
            weight = n.binomial(m)
            slot = acc[n]
            for i in range(d_out):
                slot[i] += weight * a[i if s.d_out > 1 else 0] * b[i if t.d_out > 1 else 0]
    return _with_coeffs(s, {n: tuple(v) for n, v in acc.items()}, d_out=d_out)


def cw_mul(u: Sequence[Scalar], s: TaylorSeries) -> TaylorSeries:
    """Componentwise product of a constant vector with every coefficient."""
    u = to_vector(u)
    if len(u) != s.d_out:
        raise DimensionError(f"Vector of length {len(u)} against d_out={s.d_out}")
    return _with_coeffs(s, {n: tuple(a * x for a, x in zip(u, v)) for n, v in s.coeffs.items()})


def dot(u: Sequence[Scalar], s: TaylorSeries) -> TaylorSeries:
    """Contract the output with a constant vector; the result is scalar."""
    u = to_vector(u)
    if len(u) != s.d_out:
        raise DimensionError(f"Vector of length {len(u)} against d_out={s.d_out}")
    coeffs = {n: (sum((a * x for a, x in zip(u, v)), Fraction(0)),) for n, v in s.coeffs.items()}
    return _with_coeffs(s, coeffs, d_out=1)


def power(s: TaylorSeries, m: int) -> TaylorSeries:
    """s^m for a scalar series, m >= 0."""
    if s.d_out != 1:
        raise ContractError(f"power needs a scalar series, got d_out={s.d_out}", "d_out = 1")
    result = constant((1,), s.center, s.order)
    for _ in range(m):
        result = mul(result, s)
    return result


def exp_series(s: TaylorSeries) -> TaylorSeries:
    """exp(s) for a scalar series with zero constant term."""
    if s.d_out != 1:
        raise ContractError(f"exp_series needs d_out = 1, got {s.d_out}", "d_out = 1")
    if s.value[0] != 0:
        raise ContractError(
            f"exp_series needs a zero constant term, got {s.value[0]}", "s(center) = 0"
        )
    result = constant((1,), s.center, s.order)
    term = result
    # s has no constant term, so s^m vanishes below order m
    for m in range(1, s.order + 1):
        term = scale(mul(term, s), Fraction(1, m))
        result = add(result, term)
    return result


def derivative_at(s: TaylorSeries, n: MultiIndex) -> Vector:
    return s.derivative_at(n)


# -- composition by substitution --------------------------------------------


def compose_oracle(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    """f(g(x)) by substituting h = g - g(center) into f's expansion.

    f must be expanded at g(center). The result is centered at g.center with
    order min(f.order, g.order):

        f(g(x)) = sum_{|k| <= N} f_k / k! * h(x)^k

    where h^k is the product of the component powers h_i^{k_i}, built up one
    factor at a time from h^{k - e_i}.
    """
    if f.d_in != g.d_out:
        raise DimensionError(f"Outer input dimension {f.d_in} != inner output dimension {g.d_out}")
    if f.center != g.value:
        raise ContractError(
            f"Outer series is centered at {_fmt(f.center)}, inner value is {_fmt(g.value)}",
            "f.center = g(center)",
        )
    order = min(f.order, g.order)
    g = truncate(g, order)
    h = sub(g, constant(g.value, g.center, order))
    factors = [component(h, i) for i in range(h.d_out)]

    powers: dict[MultiIndex, TaylorSeries] = {
        MultiIndex.zero(f.d_in): constant((1,), g.center, order)
    }
    for k in enumerate_graded(f.d_in, order):
        axis = next(i for i, e in enumerate(k) if e > 0)
        powers[k] = mul(powers[k - MultiIndex.unit(f.d_in, axis)], factors[axis])

    acc: dict[MultiIndex, list[Fraction]] = defaultdict(lambda: [Fraction(0)] * f.d_out)
    for k in enumerate_upto(f.d_in, order):
        fk = f.coefficient(k)
        if not any(fk):
            continue
        weight = Fraction(1, k.factorial())
        for n, hk in powers[k].coeffs.items():
            slot = acc[n]
            for i in range(f.d_out):
                slot[i] += weight * fk[i] * hk[0]
    logger.debug(f"Composed series of order {order} with {len(acc)} nonzero coefficients")
    return TaylorSeries(g.d_in, f.d_out, order, g.center, {n: tuple(v) for n, v in acc.items()})


# -- file format -------------------------------------------------------------


def to_json(s: TaylorSeries) -> dict[str, Any]:
    return SeriesDocument.from_series(s).model_dump()


def from_json(data: dict[str, Any]) -> TaylorSeries:
    return SeriesDocument.parse_document(data).to_series()
