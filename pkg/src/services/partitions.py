"""Solution sets K_n and K_{n,k}, plus the brute-force enumerators that check them.

The multivariate sets are found by depth-first backtracking over the
candidate keys j (graded-lex order), choosing a nonzero k_j for the next key
in the support and pruning on the remaining weight and the remaining part
budget. Keys are bounded by j <= n componentwise and by |j| <= |n| (complete)
or |j| <= |n| - |k| + 1 (partial), which makes the search finite and complete.
"""

import itertools
import logging
import math
from collections import Counter
from typing import Iterator, Optional, Sequence, TypeVar

from src.exceptions import DimensionError
from src.models.assignment import SolutionAssignment, SolutionSetSpec
from src.models.multiindex import MultiIndex, enumerate_below, enumerate_grade, enumerate_upto

logger = logging.getLogger(__name__)

T = TypeVar("T")


def weight(a: SolutionAssignment) -> MultiIndex:
    """Sum of j * |k_j| over the support."""
    return a.weight()


def part_count(a: SolutionAssignment) -> MultiIndex:
    """Sum of k_j over the support."""
    return a.part_count()


def _search(
    n: MultiIndex,
    keys: Sequence[MultiIndex],
    d2: int,
    budget: Optional[MultiIndex],
) -> list[SolutionAssignment]:
    results: list[SolutionAssignment] = []
    chosen: list[tuple[MultiIndex, MultiIndex]] = []

    def place(pos: int, rem_n: MultiIndex, rem_k: Optional[MultiIndex]) -> None:
        if rem_n.is_zero():
            if rem_k is None or rem_k.is_zero():
                results.append(SolutionAssignment(n.dim, d2, tuple(chosen)))
            return
        if rem_k is not None and (rem_k.is_zero() or abs(rem_k) > abs(rem_n)):
            return
        for idx in range(pos, len(keys)):
            j = keys[idx]
            if not j.leq(rem_n):
                continue
            max_mass = min(r // e for r, e in zip(rem_n, j) if e > 0)
            if rem_k is not None:
                max_mass = min(max_mass, abs(rem_k))
            for mass in range(1, max_mass + 1):
                for kj in enumerate_grade(d2, mass, cap=rem_k):
                    chosen.append((j, kj))
                    place(
                        idx + 1,
                        rem_n - j.scale(mass),
                        rem_k - kj if rem_k is not None else None,
                    )
                    chosen.pop()

    place(0, n, budget)
    return sorted(results, key=SolutionAssignment.sort_key)


def solve_partial(n: MultiIndex, k: MultiIndex) -> list[SolutionAssignment]:
    """K_{n,k}: assignments with weight n and part count k."""
    d2 = k.dim
    if n.is_zero():
        return [SolutionAssignment.empty(n.dim, d2)] if k.is_zero() else []
    if k.is_zero() or abs(k) > abs(n):
        return []
    keys = enumerate_below(n, max_abs=abs(n) - abs(k) + 1)
    found = _search(n, keys, d2, budget=k)
    logger.debug(f"K_(n={n}, k={k}) has {len(found)} elements")
    return found


def solve_complete(n: MultiIndex, d2: int) -> list[SolutionAssignment]:
    """K_n: assignments with weight n, any part count."""
    if d2 < 1:
        raise DimensionError(f"d2 must be >= 1, got {d2}")
    if n.is_zero():
        return [SolutionAssignment.empty(n.dim, d2)]
    found = _search(n, enumerate_below(n), d2, budget=None)
    logger.debug(f"K_(n={n}) with d2={d2} has {len(found)} elements")
    return found


def solve(spec: SolutionSetSpec, d2: Optional[int] = None) -> list[SolutionAssignment]:
    """Dispatch on a SolutionSetSpec; d2 is taken from k when k is present."""
    if spec.k is not None:
        if d2 is not None and d2 != spec.k.dim:
            raise DimensionError(f"d2={d2} disagrees with k={spec.k}")
        return solve_partial(spec.n, spec.k)
    return solve_complete(spec.n, d2 or 1)


def brute_force_solutions(
    n: MultiIndex, k: Optional[MultiIndex], d2: int
) -> list[SolutionAssignment]:
    """Naive enumeration over supports j <= n with values |k_j| <= |n|.

    Shares nothing with the backtracking search beyond the value types; the
    only pruning is dropping partial assignments whose weight already exceeds n.
    """
    keys = enumerate_below(n)
    values = enumerate_upto(d2, abs(n))
    found: list[SolutionAssignment] = []

    def extend(pos: int, acc: MultiIndex, pairs: list[tuple[MultiIndex, MultiIndex]]) -> None:
        if pos == len(keys):
            if acc == n:
                candidate = SolutionAssignment(n.dim, d2, tuple(pairs))
                if k is None or candidate.part_count() == k:
                    found.append(candidate)
            return
        j = keys[pos]
        for v in values:
            step = acc + j.scale(abs(v))
            if not step.leq(n):
                continue
            extend(pos + 1, step, pairs + [(j, v)] if not v.is_zero() else pairs)

    extend(0, MultiIndex.zero(n.dim), [])
    return sorted(found, key=SolutionAssignment.sort_key)


# ---------------------------------------------------------------------------
# One-dimensional solution sets
# ---------------------------------------------------------------------------

def _integer_partitions(n: int, max_part: int) -> Iterator[list[int]]:
    """Partitions of n into parts <= max_part, parts in non-increasing order."""
    if n == 0:
        yield []
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _integer_partitions(n - first, first):
            yield [first] + rest


def solve_1d(n: int, k: Optional[int] = None) -> list[tuple[int, ...]]:
    """Multiplicity tuples (k_1, ..., k_m) with sum j*k_j = n (and sum k_j = k).

    m is n for the complete set and n - k + 1 for the partial one.
    """
    if n < 0 or (k is not None and k < 0):
        raise ValueError("n and k must be nonnegative")
    if k is not None and k > n:
        return []
    length = n if k is None else n - k + 1
    tuples = []
    for parts in _integer_partitions(n, n):
        if k is not None and len(parts) != k:
            continue
        counts = Counter(parts)
        tuples.append(tuple(counts.get(j, 0) for j in range(1, length + 1)))
    return sorted(tuples)


def enumerate_tuples_1d(n: int) -> list[tuple[int, ...]]:
    """All (k_1, ..., k_n) with sum j*k_j = n, by filtering the full product."""
    ranges = [range(n // j + 1) for j in range(1, n + 1)]
    return [
        t for t in itertools.product(*ranges)
        if sum((j + 1) * kj for j, kj in enumerate(t)) == n
    ]


# ---------------------------------------------------------------------------
# Set partitions
# ---------------------------------------------------------------------------

def set_partitions(collection: Sequence[T]) -> Iterator[list[list[T]]]:
    """All partitions of a collection into nonempty unordered blocks."""
    if not collection:
        yield []
        return
    rest, last = collection[:-1], collection[-1]
    for smaller in set_partitions(rest):
        for i, block in enumerate(smaller):
            yield smaller[:i] + [block + [last]] + smaller[i + 1:]
        yield smaller + [[last]]


def count_set_partitions(n: int) -> int:
    return sum(1 for _ in set_partitions(list(range(n))))


def block_type_counts(n: int, k: Optional[int] = None) -> dict[tuple[int, ...], int]:
    """Number of set partitions of an n-set per block type.

    The block type is the multiplicity tuple (k_1, ..., k_n): k_1 singletons,
    k_2 pairs, and so on. With k given only partitions into k blocks count.
    """
    counts: Counter = Counter()
    for partition in set_partitions(list(range(n))):
        if k is not None and len(partition) != k:
            continue
        sizes = Counter(len(block) for block in partition)
        counts[tuple(sizes.get(j, 0) for j in range(1, n + 1))] += 1
    return dict(counts)


def bell_number(n: int) -> int:
    """Bell number via the Bell triangle (reference for set partition counts)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def multinomial_1d(n: int, tuple_k: Sequence[int]) -> int:
    """n! / prod(k_j! (j!)^k_j), the coefficient in the combinatorial formula."""
    denominator = math.prod(
        math.factorial(kj) * math.factorial(j) ** kj for j, kj in enumerate(tuple_k, start=1)
    )
    return math.factorial(n) // denominator
