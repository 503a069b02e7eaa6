"""Brute-force enumeration: the ground truth for small sizes.

Everything here walks the combinatorial objects one by one, so the cost
grows like exp(pi*sqrt(2n/3)).  Keep n below ~30 for unimodal sequences and
below ~40 for partitions.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .series import triangular_bound


@dataclass(frozen=True)
class UnimodalSeq:
    """Strongly unimodal sequence a_1 < ... < a_k > ... > a_s (peak_index k is 1-based)."""

    parts: tuple[int, ...]
    peak_index: int

    def __post_init__(self):
        if not is_strongly_unimodal(self.parts, self.peak_index):
            raise ValueError(f"{self.parts} is not strongly unimodal with peak at {self.peak_index}")

    @property
    def size(self) -> int:
        return sum(self.parts)


def is_strongly_unimodal(parts, k: int) -> bool:
    s = len(parts)
    if s == 0 or not 1 <= k <= s or any(a < 1 for a in parts):
        return False
    left_ok = all(parts[i] < parts[i + 1] for i in range(k - 1))
    right_ok = all(parts[i] > parts[i + 1] for i in range(k - 1, s - 1))
    return left_ok and right_ok


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(a < 1 for a in self.parts) or any(
            self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)
        ):
            raise ValueError(f"{self.parts} is not a partition")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(
            tuple(sum(1 for a in self.parts if a > i) for i in range(self.parts[0]))
        )


@dataclass
class StatTable:
    """Counts m -> c for objects of size n.

    Only the conventional crank row at n = 1 carries a negative count.
    """

    n: int
    counts: dict[int, int] = field(default_factory=dict)

    def get(self, m: int) -> int:
        return self.counts.get(m, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def is_symmetric(self) -> bool:
        return all(self.counts.get(-m, 0) == c for m, c in self.counts.items())

    def items(self) -> list[tuple[int, int]]:
        return sorted((m, c) for m, c in self.counts.items() if c)

    def reflected(self) -> "StatTable":
        return StatTable(self.n, {-m: c for m, c in self.counts.items()})

    def check(self, conventional: bool = False) -> None:
        """Raise ValueError unless every count is non-negative.

        ``conventional=True`` permits the crank convention M(0, 1) = -1.
        """
        for m, c in self.counts.items():
            if c < 0 and not (conventional and self.n == 1 and m == 0 and c == -1):
                raise ValueError(f"negative count {c} at m={m}, n={self.n}")


def unimodal_rank(seq: UnimodalSeq) -> int:
    """Terms after the peak minus terms before it."""
    return len(seq.parts) - 2 * seq.peak_index + 1


@lru_cache(maxsize=None)
def _distinct_below(total: int, bound: int) -> tuple[tuple[int, ...], ...]:
    # sets of distinct parts < bound summing to total, each listed decreasing
    if total == 0:
        return ((),)
    out = []
    for largest in range(min(bound - 1, total), 0, -1):
        for rest in _distinct_below(total - largest, largest):
            out.append((largest,) + rest)
    return tuple(out)


def iter_unimodal(n: int) -> Iterator[UnimodalSeq]:
    # choose the peak, then split the remainder between two sets of smaller distinct parts
    for peak in range(n, 0, -1):
        rest = n - peak
        for left_total in range(rest + 1):
            for left in _distinct_below(left_total, peak):
                for right in _distinct_below(rest - left_total, peak):
                    yield UnimodalSeq(tuple(reversed(left)) + (peak,) + right, len(left) + 1)


def enumerate_unimodal(n: int) -> list[UnimodalSeq]:
    if n < 1:
        raise ValueError("n must be positive")
    return list(iter_unimodal(n))


def rank_histogram(n: int) -> StatTable:
    """u(m, n) for all m by walking every sequence of size n."""
    hist = Counter(unimodal_rank(s) for s in iter_unimodal(n))
    return StatTable(n, dict(hist))


def iter_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, largest first part first."""

    def rec(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for tail in rec(remaining - first, first):
                yield (first,) + tail

    yield from rec(n, n)


def partition_rank(parts) -> int:
    if not parts:
        return 1
    return parts[0] - len(parts)


def partition_crank(parts) -> int:
    """Andrews-Garvan crank; the single partition of 1 has no crank and is rejected."""
    if not parts:
        return 1
    if tuple(parts) == (1,):
        raise ValueError("the partition (1) has no crank; use the n=1 convention")
    ones = sum(1 for a in parts if a == 1)
    if ones == 0:
        return parts[0]
    return sum(1 for a in parts if a > ones) - ones


CRANK_ROW_ONE = {1: 1, -1: 1, 0: -1}


def partition_stats(n: int) -> tuple[StatTable, StatTable]:
    """(rank table, crank table) for partitions of n."""
    if n < 1:
        raise ValueError("n must be positive")
    ranks: Counter = Counter()
    cranks: Counter = Counter()
    for lam in iter_partitions(n):
        ranks[partition_rank(lam)] += 1
        if n > 1:
            cranks[partition_crank(lam)] += 1
    if n == 1:
        return StatTable(1, dict(ranks)), StatTable(1, dict(CRANK_ROW_ONE))
    return StatTable(n, dict(ranks)), StatTable(n, dict(cranks))


def distinct_partitions(n: int) -> list[tuple[int, ...]]:
    return list(_distinct_below(n, n + 1))


def count_S_pairs(n: int) -> int:
    """Pairs (mu, nu) of distinct-part partitions with len(mu) = len(nu) + 1 and
    |mu| + |nu| = n, plus the pair of empty partitions at n = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    by_size = [distinct_partitions(k) for k in range(n + 1)]
    count = 0
    for a in range(n + 1):
        for mu in by_size[a]:
            for nu in by_size[n - a]:
                if len(mu) == len(nu) + 1:
                    count += 1
    return count


def ospt_bruteforce(n: int) -> int:
    """Positive crank total minus positive rank total over partitions of n."""
    rank, crank = partition_stats(n)
    return sum(m * c for m, c in crank.counts.items() if m > 0) - sum(
        m * c for m, c in rank.counts.items() if m > 0
    )


def max_unimodal_rank(n: int) -> int:
    """Largest |m| with u(m, n) > 0: the peak plus m smaller parts must fit in n."""
    return triangular_bound(n) - 1
