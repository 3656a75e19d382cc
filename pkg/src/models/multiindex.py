"""Multi-indices: fixed-length vectors of nonnegative integers.

Multi-indices address mixed partial derivatives, Taylor coefficients and the
variables of Bell polynomials. Every value carries its dimension and every
binary operation checks it; there is no broadcasting.

Iteration order everywhere in the package is graded lexicographic: by modulus
first, then with larger leading entries first, so in two dimensions the order
starts (1,0), (0,1), (2,0), (1,1), (0,2).
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from src.exceptions import ContractError, DimensionError, DomainError

Scalar = Union[int, Fraction]

_ENTRY = re.compile(r"[0-9]+", re.ASCII)


@dataclass(frozen=True)
class MultiIndex:
    """An immutable element of N^d."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise ContractError("A multi-index needs dimension >= 1", "dimension >= 1")
        if any(e < 0 for e in entries):
            raise DomainError(f"Multi-index entries must be nonnegative, got {entries}")
        object.__setattr__(self, "entries", entries)

    # -- construction -----------------------------------------------------

    @classmethod
    def of(cls, *entries: int) -> "MultiIndex":
        return cls(tuple(entries))

    @classmethod
    def zero(cls, d: int) -> "MultiIndex":
        return cls((0,) * d)

    @classmethod
    def ones(cls, d: int) -> "MultiIndex":
        return cls((1,) * d)

    @classmethod
    def unit(cls, d: int, axis: int) -> "MultiIndex":
        """Unit vector e_axis (0-based axis)."""
        if not 0 <= axis < d:
            raise ContractError(f"Axis {axis} outside dimension {d}", "0 <= axis < d")
        return cls(tuple(1 if i == axis else 0 for i in range(d)))

    @classmethod
    def parse(cls, text: str) -> "MultiIndex":
        """Parse the comma-separated form used on the command line ("2,1,0")."""
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(not _ENTRY.fullmatch(p) for p in parts):
            raise DomainError(f"Not a multi-index: {text!r}")
        return cls(tuple(int(p) for p in parts))

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "MultiIndex":
        return cls(tuple(data))

    def to_json(self) -> list[int]:
        return list(self.entries)

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __abs__(self) -> int:
        """|n|, the sum of the entries."""
        return sum(self.entries)

    def factorial(self) -> int:
        """n!, the product of the entry factorials."""
        return math.prod(math.factorial(e) for e in self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def graded_key(self) -> tuple:
        """Sort key realising the graded lexicographic order."""
        return (abs(self), tuple(-e for e in self.entries))

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"

    def __repr__(self) -> str:
        return f"MultiIndex({self.entries})"

    # -- arithmetic -------------------------------------------------------

    def _check_dim(self, other: "MultiIndex") -> None:
        if self.dim != other.dim:
            raise DimensionError(
                f"Dimension mismatch: {self} has dimension {self.dim}, "
                f"{other} has dimension {other.dim}"
            )

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        self._check_dim(other)
        return MultiIndex(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def sub_checked(self, other: "MultiIndex") -> "MultiIndex":
        """Componentwise difference; DomainError if a component goes negative."""
        self._check_dim(other)
        diff = tuple(a - b for a, b in zip(self.entries, other.entries))
        if any(e < 0 for e in diff):
            raise DomainError(f"{self} - {other} has a negative component")
        return MultiIndex(diff)

    __sub__ = sub_checked

    def leq(self, other: "MultiIndex") -> bool:
        """Componentwise a <= b."""
        self._check_dim(other)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def scale(self, c: int) -> "MultiIndex":
        """The scalar multiple c*n for a nonnegative integer c."""
        return MultiIndex(tuple(c * e for e in self.entries))

    def binomial(self, m: "MultiIndex") -> int:
        """Multi-index binomial coefficient C(n, m) = prod C(n_i, m_i)."""
        self._check_dim(m)
        return math.prod(math.comb(a, b) for a, b in zip(self.entries, m.entries))

    def concat(self, other: "MultiIndex") -> "MultiIndex":
        return MultiIndex(self.entries + other.entries)


def vec_pow(x: Sequence[Scalar], n: MultiIndex) -> Fraction:
    """x^n = prod x_i^{n_i}; the empty product is 1."""
    if len(x) != n.dim:
        raise DimensionError(f"Vector of length {len(x)} raised to {n} of dimension {n.dim}")
    result = Fraction(1)
    for xi, ni in zip(x, n.entries):
        if ni:
            result *= Fraction(xi) ** ni
    return result


def enumerate_grade(d: int, m: int, cap: Optional[MultiIndex] = None) -> list[MultiIndex]:
    """All multi-indices v in N^d with |v| = m (and v <= cap), in graded-lex order."""
    if d < 1:
        raise ContractError("Dimension must be >= 1", "d >= 1")
    bounds = cap.entries if cap is not None else (m,) * d

    def compose(pos: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if pos == d - 1:
            if remaining <= bounds[pos]:
                yield (remaining,)
            return
        for first in range(min(remaining, bounds[pos]), -1, -1):
            for rest in compose(pos + 1, remaining - first):
                yield (first,) + rest

    return [MultiIndex(t) for t in compose(0, m)]


def enumerate_graded(d: int, max_abs: int) -> list[MultiIndex]:
    """All m with 1 <= |m| <= max_abs in graded-lex order."""
    result: list[MultiIndex] = []
    for m in range(1, max_abs + 1):
        result.extend(enumerate_grade(d, m))
    return result


def enumerate_upto(d: int, max_abs: int) -> list[MultiIndex]:
    """All m with 0 <= |m| <= max_abs, zero first."""
    return [MultiIndex.zero(d)] + enumerate_graded(d, max_abs)


def enumerate_below(n: MultiIndex, max_abs: Optional[int] = None) -> list[MultiIndex]:
    """All nonzero j <= n componentwise (and |j| <= max_abs), in graded-lex order."""
    top = abs(n) if max_abs is None else min(max_abs, abs(n))
    result: list[MultiIndex] = []
    for m in range(1, top + 1):
        result.extend(enumerate_grade(n.dim, m, cap=n))
    return result


def sorted_graded(indices: Iterable[MultiIndex]) -> list[MultiIndex]:
    return sorted(indices, key=MultiIndex.graded_key)
