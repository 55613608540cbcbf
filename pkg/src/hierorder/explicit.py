"""Hierarchical-ordering counts from the explicit sum over integer partitions.

Each partition of n, written as multiplicities m_j (m_j blocks of size j),
contributes n! prod B_j^{m_j} / prod(m_j! (j!)^{m_j}). This path shares
nothing with the recurrence except the ordered Bell numbers, so it serves
as an independent check on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .sequences import Count, InternalConsistencyError, ordered_bell


@dataclass(frozen=True)
class PartitionMultiplicity:
    """m[j] = number of parts equal to j; m[0] is unused and always 0."""

    m: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.m):
            raise ValueError("multiplicities must be nonnegative")
        if self.m and self.m[0] != 0:
            raise ValueError("m[0] must be 0")

    @property
    def n(self) -> int:
        return sum(j * mj for j, mj in enumerate(self.m))

    def parts(self) -> tuple[int, ...]:
        """Parts in descending order."""
        return tuple(j for j in range(len(self.m) - 1, 0, -1) for _ in range(self.m[j]))

    @classmethod
    def from_parts(cls, parts, n: int | None = None) -> PartitionMultiplicity:
        size = n if n is not None else sum(parts)
        m = [0] * (size + 1)
        for p in parts:
            m[p] += 1
        return cls(tuple(m))


def _descending_partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending_partitions(n - first, first):
            yield (first,) + rest


def partitions_of(n: int) -> Iterator[PartitionMultiplicity]:
    """Every partition of n once, as multiplicities.

    Order: parts written in descending order, sequences compared
    lexicographically, largest first. For n = 4: 4, 3+1, 2+2, 2+1+1, 1+1+1+1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    for parts in _descending_partitions(n, n):
        yield PartitionMultiplicity.from_parts(parts, n)


def summand(p: PartitionMultiplicity) -> Count:
    n = p.n
    denom = 1
    numer = 1
    for j, mj in enumerate(p.m):
        if j == 0 or mj == 0:
            continue
        denom *= math.factorial(mj) * math.factorial(j) ** mj
        numer *= ordered_bell(j) ** mj
    q, r = divmod(math.factorial(n), denom)
    if r:
        raise InternalConsistencyError(f"{n}! not divisible by {denom} for parts {p.parts()}")
    return q * numer


def explicit_summands(n: int) -> list[tuple[PartitionMultiplicity, Count]]:
    return [(p, summand(p)) for p in partitions_of(n)]


def hierarchical_explicit(n: int) -> Count:
    return sum(s for _, s in explicit_summands(n))
