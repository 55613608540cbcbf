"""Exact integer sequences attached to hierarchical orderings.

Every sequence is filled by its recurrence into an append-only memo table.
Values are plain Python ints; when gmpy2 is importable the tables hold
``mpz`` internally, which roughly triples the speed of the quadratic
big-integer kernels, and convert back to ``int`` on the way out.
"""

from __future__ import annotations

import enum
import math
import sys
import threading
from contextlib import contextmanager
from functools import lru_cache
from typing import Callable, Iterator

try:
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _big = int

Count = int


class InternalConsistencyError(ArithmeticError):
    """An exact division that must leave no remainder did."""


class SequenceKind(str, enum.Enum):
    ORDERED_BELL = "B"
    HIERARCHICAL = "H"
    UNLABELED = "U"
    NESTED_HIERARCHICAL = "HH"
    COMPOSITIONS = "C"


def _check_index(name: str, value: int, minimum: int = 0) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")


class SequenceTable:
    """Memoized values of one sequence, indexed from n = 0.

    The table only ever grows. Filling is serialized by a lock so readers
    may share a table across threads once the entries they need exist.
    """

    def __init__(self, kind: SequenceKind | None, step: Callable[[list, int], object]):
        self.kind = kind
        self._step = step
        self._values: list = [_big(1)]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        name = self.kind.value if self.kind else "internal"
        return f"SequenceTable({name}, filled to n={len(self._values) - 1})"

    def extend(self, n: int) -> None:
        if n < len(self._values):
            return
        with self._lock:
            values = self._values
            while len(values) <= n:
                values.append(self._step(values, len(values)))

    def __getitem__(self, n: int) -> Count:
        _check_index("n", n)
        self.extend(n)
        return int(self._values[n])

    def values(self, stop: int) -> list[Count]:
        """Entries 0..stop inclusive."""
        _check_index("stop", stop)
        self.extend(stop)
        return [int(v) for v in self._values[: stop + 1]]

    def raw(self, n: int):
        self.extend(n)
        return self._values[n]


def _ordered_bell_step(values: list, n: int):
    # B_n = sum_{k=1}^{n} C(n,k) B_{n-k}, from B(x)(2 - e^x) = 1
    total = _big(0)
    c = _big(1)
    for k in range(1, n + 1):
        c = c * (n - k + 1) // k
        total += c * values[n - k]
    return total


def _exponential_formula_step(inner: SequenceTable) -> Callable[[list, int], object]:
    # exp(A(x) - 1):  F_n = sum_{k=1}^{n} C(n-1,k-1) A_k F_{n-k}
    def step(values: list, n: int):
        inner.extend(n)
        a = inner._values
        total = _big(0)
        c = _big(1)
        for k in range(1, n + 1):
            if k > 1:
                c = c * (n - k + 1) // (k - 1)
            total += c * a[k] * values[n - k]
        return total

    return step


def _alpha_step(values: list, k: int):
    total = 0
    d = 1
    while d * d <= k:
        if k % d == 0:
            total += d << (d - 1)
            e = k // d
            if e != d:
                total += e << (e - 1)
        d += 1
    return _big(total)


def _unlabeled_step(values: list, n: int):
    _ALPHA.extend(n)
    alpha = _ALPHA._values
    total = _big(0)
    for k in range(1, n + 1):
        total += alpha[k] * values[n - k]
    q, r = divmod(total, n)
    if r:
        raise InternalConsistencyError(f"U_{n}: sum {total} not divisible by {n}")
    return q


def _compositions_step(values: list, n: int):
    return _big(1) << (n - 1)


# index 0 of the alpha table is a placeholder; alpha_k is defined for k >= 1
_ALPHA = SequenceTable(None, _alpha_step)
_ORDERED_BELL = SequenceTable(SequenceKind.ORDERED_BELL, _ordered_bell_step)
_HIERARCHICAL = SequenceTable(
    SequenceKind.HIERARCHICAL, _exponential_formula_step(_ORDERED_BELL)
)
# sets of hierarchical orderings, EGF exp(H(x) - 1)
_HIERARCHICAL_SETS = SequenceTable(None, _exponential_formula_step(_HIERARCHICAL))
# one more set level, EGF exp(exp(H(x) - 1) - 1): 1, 1, 6, 52, 588, ...
_NESTED = SequenceTable(
    SequenceKind.NESTED_HIERARCHICAL, _exponential_formula_step(_HIERARCHICAL_SETS)
)
_UNLABELED = SequenceTable(SequenceKind.UNLABELED, _unlabeled_step)
_COMPOSITIONS = SequenceTable(SequenceKind.COMPOSITIONS, _compositions_step)

_TABLES = {
    SequenceKind.ORDERED_BELL: _ORDERED_BELL,
    SequenceKind.HIERARCHICAL: _HIERARCHICAL,
    SequenceKind.UNLABELED: _UNLABELED,
    SequenceKind.NESTED_HIERARCHICAL: _NESTED,
    SequenceKind.COMPOSITIONS: _COMPOSITIONS,
}


def table(kind: SequenceKind | str) -> SequenceTable:
    """The shared memo table for ``kind`` (a SequenceKind or its short name)."""
    return _TABLES[SequenceKind(kind)]


def ordered_bell(n: int) -> Count:
    """Number of ordered set-partitions of an n-set."""
    _check_index("n", n)
    return _ORDERED_BELL[n]


def hierarchical(n: int) -> Count:
    """Number of hierarchical orderings (societies) on n labeled elements."""
    _check_index("n", n)
    return _HIERARCHICAL[n]


def hierarchical_sets(n: int) -> Count:
    """Coefficients of exp(H(x) - 1) times n!: 1, 1, 5, 36, 338, ..."""
    _check_index("n", n)
    return _HIERARCHICAL_SETS[n]


def nested_hierarchical(n: int) -> Count:
    """Hierarchies of hierarchical orderings: 1, 1, 6, 52, 588, 8174, ...

    EGF exp(exp(H(x) - 1) - 1), i.e. the exponential formula applied twice
    on top of H. (Applied once, to exp(H(x) - 1), it gives
    ``hierarchical_sets`` instead.)
    """
    _check_index("n", n)
    return _NESTED[n]


def unlabeled_alpha(k: int) -> Count:
    """Divisor sum alpha_k = sum over d | k of d * 2^(d-1)."""
    _check_index("k", k, minimum=1)
    return _ALPHA[k]


def unlabeled(n: int) -> Count:
    """Number of hierarchical orderings on n unlabeled elements."""
    _check_index("n", n)
    return _UNLABELED[n]


def compositions(n: int) -> Count:
    _check_index("n", n, minimum=1)
    return 1 << (n - 1)


def binomial(n: int, k: int) -> Count:
    _check_index("n", n)
    _check_index("k", k)
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    return math.comb(n, k)


@lru_cache(maxsize=32)
def _stirling_row(n: int) -> tuple[int, ...]:
    row = [1]
    for m in range(1, n + 1):
        prev = row
        row = [0] * (m + 1)
        for h in range(1, m):
            row[h] = h * prev[h] + prev[h - 1]
        row[m] = 1
    return tuple(row)


def stirling_row(n: int) -> tuple[Count, ...]:
    """Row n of the Stirling triangle of the second kind, S(n, 0..n)."""
    _check_index("n", n)
    return _stirling_row(n)


def stirling2(n: int, h: int) -> Count:
    _check_index("n", n)
    _check_index("h", h)
    if h > n:
        raise ValueError(f"h={h} exceeds n={n}")
    return _stirling_row(n)[h]


def sequence(kind: SequenceKind | str, n: int) -> Count:
    kind = SequenceKind(kind)
    if kind is SequenceKind.COMPOSITIONS:
        return compositions(n)
    _check_index("n", n)
    return _TABLES[kind][n]


def iter_sequence(kind: SequenceKind | str, start: int, stop: int) -> Iterator[tuple[int, Count]]:
    """Yield (n, value) for start <= n <= stop."""
    for n in range(start, stop + 1):
        yield n, sequence(kind, n)


@contextmanager
def _unbounded_int_str():
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def format_count(value: Count) -> str:
    """Decimal string for a Count of any size."""
    if value < 0:
        raise ValueError("counts are nonnegative")
    with _unbounded_int_str():
        return str(int(value))


def parse_count(text: str) -> Count:
    if not text.isascii() or not text.isdigit():
        raise ValueError(f"not a decimal count: {text!r}")
    with _unbounded_int_str():
        return int(text)
