"""Concrete hierarchies and hierarchical orderings: enumeration, sampling, notation.

Text notation, byte-exact:

* a block is its labels in ascending order joined by ``,``
* a hierarchy is its blocks from rank 1 (bottom) upward joined by ``<``
* an ordering is its hierarchies, sorted by minimum label, joined by `` | ``

so ``"1<2,3 | 4"`` is the hierarchy {1} below {2,3} next to the lone {4}.
Unlabeled structures use the same separators with part sizes in place of
label blocks: ``"2<1 | 1"``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .sequences import binomial, ordered_bell

MAX_HIERARCHY_N = 9
MAX_ORDERING_N = 8
MAX_COMPOSITION_N = 20
MAX_UNLABELED_N = 14

BLOCK_SEP = ","
RANK_SEP = "<"
HIERARCHY_SEP = " | "


class StructureError(ValueError):
    """Malformed structure text or an invalid structure."""


def _guard(n: int, limit: int, what: str) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("n must be an int")
    if not 1 <= n <= limit:
        raise ValueError(f"{what} enumeration supports 1 <= n <= {limit}, got {n}")


@dataclass(frozen=True)
class Hierarchy:
    """An ordered set-partition; blocks[0] holds the rank-1 elements."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        if not blocks:
            raise StructureError("a hierarchy needs at least one block")
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise StructureError("empty block")
            if seen & b:
                raise StructureError(f"label(s) {sorted(seen & b)} appear in two blocks")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @property
    def labels(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    @property
    def height(self) -> int:
        return len(self.blocks)

    def rank_of(self, label: int) -> int:
        for r, b in enumerate(self.blocks, 1):
            if label in b:
                return r
        raise KeyError(label)


@dataclass(frozen=True)
class HierarchicalOrdering:
    """An unordered collection of hierarchies partitioning {1..n}.

    Stored sorted by each hierarchy's minimum label so equal orderings
    compare and hash equal.
    """

    hierarchies: tuple[Hierarchy, ...]

    def __post_init__(self):
        hs = tuple(sorted(self.hierarchies, key=lambda h: min(h.labels)))
        if not hs:
            raise StructureError("an ordering needs at least one hierarchy")
        labels: set[int] = set()
        for h in hs:
            if labels & h.labels:
                raise StructureError("hierarchies share labels")
            labels |= h.labels
        if labels != set(range(1, len(labels) + 1)):
            raise StructureError("labels must be exactly 1..n")
        object.__setattr__(self, "hierarchies", hs)

    @property
    def n(self) -> int:
        return sum(len(h.labels) for h in self.hierarchies)


@dataclass(frozen=True, order=True)
class Composition:
    """Parts listed from rank 1 upward."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts or any(p < 1 for p in parts):
            raise StructureError(f"invalid composition {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def sort_key(self) -> tuple:
        """Canonical order: (sum, length, parts)."""
        return (self.total, len(self.parts), self.parts)


CompositionMultiset = tuple[Composition, ...]


# --- enumeration -----------------------------------------------------------


def _ordered_partitions(labels: tuple[int, ...]) -> Iterator[tuple[frozenset[int], ...]]:
    # rank-1 block by size, then lexicographically among combinations
    if not labels:
        yield ()
        return
    for k in range(1, len(labels) + 1):
        for first in combinations(labels, k):
            chosen = set(first)
            rest = tuple(x for x in labels if x not in chosen)
            for tail in _ordered_partitions(rest):
                yield (frozenset(first),) + tail


def hierarchies_of(labels: Iterable[int]) -> Iterator[Hierarchy]:
    """All ordered set-partitions of an arbitrary label set."""
    for blocks in _ordered_partitions(tuple(sorted(labels))):
        yield Hierarchy(blocks)


def enumerate_hierarchies(n: int) -> Iterator[Hierarchy]:
    """Every ordered set-partition of {1..n} once.

    Order: the rank-1 block runs over subsets by increasing size, then in
    lexicographic order; the remaining labels are handled recursively.
    """
    _guard(n, MAX_HIERARCHY_N, "hierarchy")
    return hierarchies_of(range(1, n + 1))


def _set_partitions(labels: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not labels:
        yield ()
        return
    head, rest = labels[0], labels[1:]
    for k in range(len(rest) + 1):
        for mates in combinations(rest, k):
            taken = set(mates)
            remaining = tuple(x for x in rest if x not in taken)
            for tail in _set_partitions(remaining):
                yield ((head,) + mates,) + tail


def enumerate_orderings(n: int) -> Iterator[HierarchicalOrdering]:
    """Every hierarchical ordering on {1..n} once.

    Outer loop: set-partitions of {1..n} (the block holding the smallest
    remaining label grows by size, then lexicographically). Inner loop: the
    product of the hierarchies on each block.
    """
    _guard(n, MAX_ORDERING_N, "ordering")
    for blocks in _set_partitions(tuple(range(1, n + 1))):
        for hs in product(*(list(hierarchies_of(b)) for b in blocks)):
            yield HierarchicalOrdering(hs)


def _compositions_with_length(n: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 1:
        yield (n,)
        return
    for first in range(n - length + 1, 0, -1):
        for rest in _compositions_with_length(n - first, length - 1):
            yield (first,) + rest


def enumerate_compositions(n: int) -> Iterator[Composition]:
    """All compositions of n, by length and then reverse-lexicographically.

    n = 3 gives (3), (2,1), (1,2), (1,1,1).
    """
    _guard(n, MAX_COMPOSITION_N, "composition")
    return _iter_compositions(n)


def _iter_compositions(n: int) -> Iterator[Composition]:
    for length in range(1, n + 1):
        for parts in _compositions_with_length(n, length):
            yield Composition(parts)


def enumerate_unlabeled_orderings(n: int) -> Iterator[CompositionMultiset]:
    """Every multiset of compositions with total n once.

    Members are listed in canonical (sum, length, parts) order, and the
    multisets come out in lexicographic order of those member lists.
    """
    _guard(n, MAX_UNLABELED_N, "unlabeled ordering")
    atoms = sorted(
        (c for size in range(1, n + 1) for c in _iter_compositions(size)),
        key=Composition.sort_key,
    )
    sizes = [a.total for a in atoms]

    def extend(start: int, remaining: int, acc: list[Composition]) -> Iterator[CompositionMultiset]:
        if remaining == 0:
            yield tuple(acc)
            return
        for i in range(start, len(atoms)):
            if sizes[i] > remaining:
                break
            acc.append(atoms[i])
            yield from extend(i, remaining - sizes[i], acc)
            acc.pop()

    return extend(0, n, [])


# --- sampling --------------------------------------------------------------


def _first_block_size(m: int, rng: random.Random) -> int:
    # P(k) = C(m,k) B_{m-k} / B_m; exact integer thresholds, no float rounding
    u = rng.randrange(ordered_bell(m))
    acc = 0
    for k in range(1, m + 1):
        acc += binomial(m, k) * ordered_bell(m - k)
        if u < acc:
            return k
    raise AssertionError("cumulative weights must reach B_m")


def sample_hierarchy(n: int, seed=None, *, rng: random.Random | None = None) -> Hierarchy:
    """A uniformly random ordered set-partition of {1..n}.

    The rank-1 block size k is drawn with probability C(n,k) B_{n-k} / B_n,
    its members as a uniform k-subset, and the rest recursively. Pass
    ``rng`` to draw many samples from one stream; otherwise ``seed`` seeds
    a fresh generator.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if rng is None:
        rng = random.Random(seed)
    remaining = list(range(1, n + 1))
    blocks = []
    while remaining:
        k = _first_block_size(len(remaining), rng)
        chosen = frozenset(rng.sample(remaining, k))
        blocks.append(chosen)
        remaining = [x for x in remaining if x not in chosen]
    return Hierarchy(tuple(blocks))


def sample_hierarchies(n: int, count: int, seed=None) -> Iterator[Hierarchy]:
    rng = random.Random(seed)
    for _ in range(count):
        yield sample_hierarchy(n, rng=rng)


# --- notation --------------------------------------------------------------


def _format_hierarchy(h: Hierarchy) -> str:
    return RANK_SEP.join(BLOCK_SEP.join(str(x) for x in sorted(b)) for b in h.blocks)


def format_structure(s: HierarchicalOrdering | Hierarchy) -> str:
    if isinstance(s, Hierarchy):
        return _format_hierarchy(s)
    return HIERARCHY_SEP.join(_format_hierarchy(h) for h in s.hierarchies)


def format_unlabeled(ms: Sequence[Composition]) -> str:
    members = sorted(ms, key=Composition.sort_key)
    return HIERARCHY_SEP.join(RANK_SEP.join(str(p) for p in c.parts) for c in members)


def _parse_label(token: str) -> int:
    if not token or not token.isascii() or not token.isdigit():
        raise StructureError(f"malformed label {token!r}")
    return int(token)


def parse_structure(text: str, n: int) -> HierarchicalOrdering:
    """Inverse of ``format_structure`` for orderings on {1..n}."""
    if not text:
        raise StructureError("empty structure text")
    seen: set[int] = set()
    hierarchies = []
    for chunk in text.split(HIERARCHY_SEP):
        blocks = []
        for block_text in chunk.split(RANK_SEP):
            block = []
            for token in block_text.split(BLOCK_SEP):
                label = _parse_label(token)
                if not 1 <= label <= n:
                    raise StructureError(f"label {label} outside 1..{n}")
                if label in seen:
                    raise StructureError(f"duplicate label {label}")
                seen.add(label)
                block.append(label)
            blocks.append(frozenset(block))
        hierarchies.append(Hierarchy(tuple(blocks)))
    missing = set(range(1, n + 1)) - seen
    if missing:
        raise StructureError(f"missing labels {sorted(missing)}")
    return HierarchicalOrdering(tuple(hierarchies))
