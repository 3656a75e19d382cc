"""Finite-support assignments j -> k_j, the elements of the solution sets."""

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from src.exceptions import ContractError, DimensionError
from src.models.multiindex import MultiIndex


@dataclass(frozen=True)
class SolutionAssignment:
    """A map from nonzero j in N^d1 to nonzero k_j in N^d2.

    Only nonzero values are stored; every other j implicitly maps to zero.
    The support is kept sorted in graded-lex order on j.
    """

    d1: int
    d2: int
    support: tuple[tuple[MultiIndex, MultiIndex], ...] = ()

    def __post_init__(self):
        seen = set()
        for j, kj in self.support:
            if j.dim != self.d1 or kj.dim != self.d2:
                raise DimensionError(
                    f"Assignment pair {j} -> {kj} does not match dimensions ({self.d1}, {self.d2})"
                )
            if j.is_zero():
                raise ContractError("The zero multi-index cannot be a key", "j != 0")
            if kj.is_zero():
                raise ContractError(f"Zero value stored for key {j}", "k_j != 0")
            if j in seen:
                raise ContractError(f"Key {j} appears twice", "unique keys")
            seen.add(j)
        ordered = tuple(sorted(self.support, key=lambda pair: pair[0].graded_key()))
        object.__setattr__(self, "support", ordered)

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[MultiIndex, MultiIndex], d1: int, d2: int
    ) -> "SolutionAssignment":
        """Build from a mapping, dropping zero values."""
        return cls(d1, d2, tuple((j, kj) for j, kj in mapping.items() if not kj.is_zero()))

    @classmethod
    def empty(cls, d1: int, d2: int) -> "SolutionAssignment":
        return cls(d1, d2, ())

    def as_dict(self) -> dict[MultiIndex, MultiIndex]:
        return dict(self.support)

    def weight(self) -> MultiIndex:
        """Sum over the support of j * |k_j|."""
        total = MultiIndex.zero(self.d1)
        for j, kj in self.support:
            total = total + j.scale(abs(kj))
        return total

    def part_count(self) -> MultiIndex:
        """Sum over the support of k_j."""
        total = MultiIndex.zero(self.d2)
        for _, kj in self.support:
            total = total + kj
        return total

    def sort_key(self) -> tuple:
        """Canonical ordering key: the support compared pairwise in graded-lex order."""
        return tuple((j.graded_key(), kj.graded_key()) for j, kj in self.support)

    def to_json(self) -> list[list[list[int]]]:
        return [[j.to_json(), kj.to_json()] for j, kj in self.support]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[Sequence[int]]], d1: int, d2: int) -> "SolutionAssignment":
        return cls(d1, d2, tuple((MultiIndex.from_json(j), MultiIndex.from_json(kj)) for j, kj in data))

    def __str__(self) -> str:
        inner = ", ".join(f"{j}->{kj}" for j, kj in self.support)
        return "{" + inner + "}"


@dataclass(frozen=True)
class SolutionSetSpec:
    """Parameters of K_n (k absent) or K_{n,k}."""

    n: MultiIndex
    k: Optional[MultiIndex] = None

    @property
    def is_complete(self) -> bool:
        return self.k is None

    @property
    def d1(self) -> int:
        return self.n.dim
