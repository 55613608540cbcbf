"""Truncated formal power series with exact rational coefficients.

A Series is immutable. Binary operations need matching flavors (EGF or
OGF) and truncate to the smaller order, so an identity checked here is an
exact equality of Fractions, never a tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .sequences import InternalConsistencyError, ordered_bell

Rational = Fraction


class Flavor(enum.Enum):
    EGF = "egf"
    OGF = "ogf"


class FlavorMismatch(TypeError):
    pass


@dataclass(frozen=True)
class Series:
    coeffs: tuple[Fraction, ...]
    flavor: Flavor = Flavor.OGF

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int, flavor: Flavor = Flavor.OGF) -> Series:
        return cls((Fraction(value),) + (Fraction(0),) * order, flavor)

    @classmethod
    def monomial(cls, power: int, order: int, flavor: Flavor = Flavor.OGF) -> Series:
        coeffs = [Fraction(0)] * (order + 1)
        if power <= order:
            coeffs[power] = Fraction(1)
        return cls(tuple(coeffs), flavor)

    @classmethod
    def exp_x(cls, order: int, flavor: Flavor = Flavor.EGF) -> Series:
        """e^x as sum x^k/k!."""
        return cls(tuple(Fraction(1, math.factorial(k)) for k in range(order + 1)), flavor)

    @classmethod
    def from_counts(cls, counts: Iterable[int], flavor: Flavor) -> Series:
        """Generating function of a counting sequence (divides by n! for EGF)."""
        counts = list(counts)
        if flavor is Flavor.EGF:
            return cls(tuple(Fraction(c, math.factorial(n)) for n, c in enumerate(counts)), flavor)
        return cls(tuple(Fraction(c) for c in counts), flavor)

    def counts(self) -> list[int]:
        """Coefficients as counts: n! * c_n for EGF, c_n for OGF. Must be integral."""
        out = []
        for n, c in enumerate(self.coeffs):
            v = c * math.factorial(n) if self.flavor is Flavor.EGF else c
            if v.denominator != 1:
                raise InternalConsistencyError(f"coefficient {n} is not integral: {v}")
            out.append(v.numerator)
        return out

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], self.flavor)

    def _match(self, other: Series) -> int:
        if not isinstance(other, Series):
            return NotImplemented
        if other.flavor is not self.flavor:
            raise FlavorMismatch(f"{self.flavor.value} vs {other.flavor.value}")
        return min(self.order, other.order)

    def _coerce(self, other) -> Series:
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series.constant(other, self.order, self.flavor)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self._match(other)
        return Series(tuple(a + b for a, b in zip(self.coeffs[: m + 1], other.coeffs)), self.flavor)

    __radd__ = __add__

    def __neg__(self):
        return Series(tuple(-c for c in self.coeffs), self.flavor)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series(tuple(c * other for c in self.coeffs), self.flavor)
        if isinstance(other, Series):
            return series_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return series_inv(self) ** (-k)
        result = Series.constant(1, self.order, self.flavor)
        for _ in range(k):
            result = result * self
        return result


def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated to the smaller order."""
    m = a._match(b)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for n in range(m + 1):
        out.append(sum((ac[k] * bc[n - k] for k in range(n + 1) if ac[k] and bc[n - k]), Fraction(0)))
    return Series(tuple(out), a.flavor)


def series_inv(a: Series) -> Series:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroDivisionError("series with zero constant term has no inverse")
    ac = a.coeffs
    out = [1 / a0]
    for n in range(1, a.order + 1):
        s = sum((ac[k] * out[n - k] for k in range(1, n + 1) if ac[k]), Fraction(0))
        out.append(-s / a0)
    return Series(tuple(out), a.flavor)


def series_diff(a: Series) -> Series:
    if a.order < 1:
        raise ValueError("derivative needs order >= 1")
    return Series(tuple(k * a.coeffs[k] for k in range(1, a.order + 1)), a.flavor)


def series_integrate(a: Series, constant=0) -> Series:
    """Antiderivative with the given constant term; order grows by one."""
    return Series((Fraction(constant),) + tuple(c / (k + 1) for k, c in enumerate(a.coeffs)), a.flavor)


def series_exp(a: Series) -> Series:
    if a.coeffs[0] != 0:
        raise ValueError("exp needs a zero constant term")
    # n b_n = sum_{k=1}^{n} k a_k b_{n-k}  from  b' = a' b
    ac = a.coeffs
    out = [Fraction(1)]
    for n in range(1, a.order + 1):
        s = sum((k * ac[k] * out[n - k] for k in range(1, n + 1) if ac[k]), Fraction(0))
        out.append(s / n)
    return Series(tuple(out), a.flavor)


def series_log(a: Series) -> Series:
    if a.coeffs[0] != 1:
        raise ValueError("log needs constant term 1")
    if a.order == 0:
        return Series.constant(0, 0, a.flavor)
    return series_integrate(series_diff(a) * series_inv(a.truncate(a.order - 1)))


def ordered_bell_egf(order: int) -> Series:
    """1/(2 - e^x)."""
    return series_inv(2 - Series.exp_x(order))


def hierarchical_egf(order: int) -> Series:
    """exp(B(x) - 1)."""
    return series_exp(ordered_bell_egf(order) - 1)


def hierarchical_sets_egf(order: int) -> Series:
    """exp(exp(1/(2 - e^x) - 1) - 1) = exp(H(x) - 1)."""
    return series_exp(hierarchical_egf(order) - 1)


def nested_hierarchical_egf(order: int) -> Series:
    """exp(exp(H(x) - 1) - 1), whose counts are 1, 1, 6, 52, 588, 8174, ..."""
    return series_exp(hierarchical_sets_egf(order) - 1)


def unlabeled_ogf(order: int) -> Series:
    """Product over j of (1 - x^j)^(-2^(j-1)), truncated at x^order.

    Built by multiplying in each factor's binomial series, so it never
    touches the recurrence in ``sequences``.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for j in range(1, order + 1):
        e = 1 << (j - 1)
        # (1 - y)^(-e) = sum_t C(e + t - 1, t) y^t with y = x^j
        factor = [0] * (order + 1)
        for t in range(order // j + 1):
            factor[t * j] = math.comb(e + t - 1, t)
        coeffs = [sum(coeffs[i] * factor[n - i] for i in range(n + 1)) for n in range(order + 1)]
    return Series.from_counts(coeffs, Flavor.OGF)


def log_unlabeled_identity(order: int) -> Series:
    """Closed form of log U(x): sum over m >= 1 of (1/m) x^m / (1 - 2 x^m).

    Expanding each term gives coefficient sum_{d | N} d 2^(d-1) / N at x^N.
    The 1/m weight is needed; without it the x^2 coefficient would be 3
    instead of 5/2.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        # x^m / (1 - 2x^m) = sum_{d>=1} 2^(d-1) x^(md)
        for d in range(1, order // m + 1):
            coeffs[m * d] += Fraction(1 << (d - 1), m)
    return Series(tuple(coeffs), Flavor.OGF)


def rank_numerator_egf(order: int) -> Series:
    """-(1/2) (e^x - 1)(e^x - 3) / (e^x - 2)^2, the EGF of a_n B_n."""
    e = Series.exp_x(order)
    num = (e - 1) * (e - 3)
    den = (e - 2) * (e - 2)
    return num * series_inv(den) * Fraction(-1, 2)


def ode_residual(order: int) -> Series:
    """H'(x) (2 - e^x)^2 / e^x - H(x); identically zero if the ODE holds."""
    h = hierarchical_egf(order)
    e = Series.exp_x(order - 1)
    two_minus = 2 - e
    lhs = series_diff(h) * two_minus * two_minus * series_inv(e)
    return lhs - h.truncate(order - 1)


def ordered_bell_check_series(order: int) -> Series:
    """B(x) (2 - e^x), built from the exact B_n table; equals 1 when consistent."""
    b = Series.from_counts((ordered_bell(n) for n in range(order + 1)), Flavor.EGF)
    return b * (2 - Series.exp_x(order))
