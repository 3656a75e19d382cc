"""Derivative tensors of a composition, one vector per multi-index."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from src.exceptions import TruncationError
from src.models.multiindex import MultiIndex, sorted_graded

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class DerivTensor:
    """values[n] = d^n/dx^n f(g(x)) at the expansion point, for |n| <= order."""

    d_in: int
    d_out: int
    order: int
    values: Mapping[MultiIndex, Vector] = field(default_factory=dict)

    def __post_init__(self):
        for n in self.values:
            if abs(n) > self.order:
                raise TruncationError(f"Entry {n} exceeds tensor order {self.order}")

    def __getitem__(self, n: MultiIndex) -> Vector:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def keys(self) -> list[MultiIndex]:
        return sorted_graded(self.values)

    def render(self) -> str:
        """One line per multi-index: "(1,0): 3/2, 1"."""
        lines = [
            f"{n}: " + ", ".join(str(v) for v in self.values[n]) for n in self.keys()
        ]
        return "\n".join(lines)
