"""Rank distribution of a random element in a single random hierarchy.

Labeled model: a hierarchy is drawn uniformly from the B_n ordered
set-partitions of {1..n}, then an element uniformly from {1..n}. Given a
height h, the element's rank is uniform on 1..h, which gives
P(rank = r) = (1/B_n) sum_{i>=r} (i-1)! S(n,i).

Unlabeled model: a composition of n is drawn uniformly from the 2^(n-1),
then one of its n cells uniformly, so a part's rank is weighted by its size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import log_count, rank_numerator_asymptotic_log
from .sequences import InternalConsistencyError, ordered_bell, stirling_row


@dataclass(frozen=True)
class RankDistribution:
    n: int
    probs: tuple[Fraction, ...]  # probs[r - 1] = P(rank = r)
    mean: Fraction

    def prob(self, r: int) -> Fraction:
        if not 1 <= r <= self.n:
            return Fraction(0)
        return self.probs[r - 1]

    def tail(self, r: int) -> Fraction:
        """P(rank >= r)."""
        return sum(self.probs[r - 1 :], Fraction(0))

    def check(self) -> None:
        """Raise if the exact invariants fail."""
        if sum(self.probs, Fraction(0)) != 1:
            raise InternalConsistencyError("probabilities do not sum to 1")
        for a, b in zip(self.probs, self.probs[1:] + (Fraction(0),)):
            if not a >= b >= 0:
                raise InternalConsistencyError("probabilities not non-increasing in rank")
        if self.mean != sum(r * p for r, p in enumerate(self.probs, 1)):
            raise InternalConsistencyError("mean disagrees with the distribution")

    def format(self) -> str:
        body = ", ".join(f"{r}: {p}" for r, p in enumerate(self.probs, 1))
        return f"{body}, mean {self.mean}"


def _from_weights(n: int, weights: list[int], total: int) -> RankDistribution:
    # weights[r-1] = total * P(rank = r)
    probs = tuple(Fraction(w, total) for w in weights)
    mean = Fraction(sum(r * w for r, w in enumerate(weights, 1)), total)
    return RankDistribution(n, probs, mean)


def _suffix_sums(terms: list[int]) -> list[int]:
    out = []
    acc = 0
    for t in reversed(terms):
        acc += t
        out.append(acc)
    out.reverse()
    return out


def labeled_rank_distribution(n: int) -> RankDistribution:
    if n < 1:
        raise ValueError("n must be >= 1")
    row = stirling_row(n)
    # height i contributes (i-1)! S(n,i) to every rank r <= i
    per_height = [math.factorial(i - 1) * row[i] for i in range(1, n + 1)]
    return _from_weights(n, _suffix_sums(per_height), ordered_bell(n))


def rank_numerator(n: int) -> int:
    """2 a_n B_n = sum_{i=1}^{n} (i+1)! S(n,i), an integer."""
    if n < 0:
        raise ValueError("n must be >= 0")
    row = stirling_row(n)
    total = 0
    f = 1  # (i+1)!
    for i in range(1, n + 1):
        f *= i + 1
        total += f * row[i]
    return total


def labeled_average_rank(n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(rank_numerator(n), 2 * ordered_bell(n))


def unlabeled_rank_distribution(n: int) -> RankDistribution:
    if n < 1:
        raise ValueError("n must be >= 1")
    binomials = [math.comb(n, i) for i in range(1, n + 1)]
    dist = _from_weights(n, _suffix_sums(binomials), n << (n - 1))
    if dist.mean != Fraction(n + 3, 4):
        raise InternalConsistencyError(f"unlabeled mean {dist.mean} != (n+3)/4")
    return dist


def rank_numerator_values(order: int, *, cross_check: bool = True) -> list[int]:
    """[2 a_n B_n for n = 0..order], optionally checked against the EGF."""
    if order < 0:
        raise ValueError("order must be >= 0")
    values = [rank_numerator(n) for n in range(order + 1)]
    if cross_check:
        from .series import rank_numerator_egf

        series_values = [2 * c for c in rank_numerator_egf(order).counts()]
        if series_values != values:
            raise InternalConsistencyError("rank numerators disagree with their EGF")
    return values


def labeled_rank_asymptotic_check(n: int) -> float:
    """Exact a_n B_n divided by n! n / (8 (log 2)^(n+2))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    log_exact = log_count(rank_numerator(n)) - math.log(2.0)
    return math.exp(log_exact - rank_numerator_asymptotic_log(n))
