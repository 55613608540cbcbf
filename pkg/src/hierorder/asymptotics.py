"""Asymptotic estimates for B_n, H_n, U_n and a_n B_n, evaluated in log space.

Nothing here forms n! or (log 2)^-n as a float; every estimate is carried
as its natural log and compared with the exact count through ``log_count``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.optimize import brentq

LOG2 = math.log(2.0)
LOGLOG2 = math.log(LOG2)
LOG_FACTORIAL_LIMIT = 10**6
SADDLE_MAX_ITER = 200


class SaddlePointError(RuntimeError):
    pass


@dataclass(frozen=True)
class AsymptoticEstimate:
    log_value: float
    ratio_to_exact: float | None = None

    @property
    def log10_value(self) -> float:
        return self.log_value / math.log(10.0)

    def scientific(self, digits: int = 6) -> str:
        """The estimate as ``m.mmmmmme+XX`` without ever overflowing a float."""
        l10 = self.log10_value
        exp = math.floor(l10)
        mant = 10.0 ** (l10 - exp)
        if round(mant, digits - 1) >= 10.0:
            mant /= 10.0
            exp += 1
        return f"{mant:.{digits - 1}f}e{exp:+d}"


def log_count(value: int) -> float:
    """Natural log of a positive big integer from its top 64 bits and bit length."""
    value = int(value)
    if value <= 0:
        raise ValueError("log of a nonpositive count")
    shift = value.bit_length() - 64
    if shift <= 0:
        return math.log(value)
    return math.log(value >> shift) + shift * LOG2


@lru_cache(maxsize=4096)
def log_factorial(n: int) -> float:
    """log n! as a correctly rounded sum of log k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > LOG_FACTORIAL_LIMIT:
        raise ValueError(f"log_factorial limited to n <= {LOG_FACTORIAL_LIMIT}")
    return math.fsum(math.log(k) for k in range(2, n + 1))


def constant_C() -> float:
    return 32.0 * math.pi**2 * math.exp(3.0 - 1.0 / LOG2) * LOG2


def _with_ratio(log_value: float, exact: int | None) -> AsymptoticEstimate:
    ratio = None if exact is None else math.exp(log_value - log_count(exact))
    return AsymptoticEstimate(log_value, ratio)


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("asymptotic formulas need n >= 1")


def hierarchical_asymptotic_log(n: int, exact: int | None = None) -> AsymptoticEstimate:
    """H_n ~ n! e^sqrt(2n/log 2) / (C^(1/4) n^(3/4) (log 2)^n)."""
    _check_n(n)
    lv = (
        log_factorial(n)
        + math.sqrt(2.0 * n / LOG2)
        - 0.25 * math.log(constant_C())
        - 0.75 * math.log(n)
        - n * LOGLOG2
    )
    return _with_ratio(lv, exact)


def hierarchical_log_form_residual(n: int, exact: int) -> float:
    """log H_n - (n log n - n(1 + log log 2) + sqrt(2n/log 2)); should be O(log n)."""
    _check_n(n)
    main = n * math.log(n) - n * (1.0 + LOGLOG2) + math.sqrt(2.0 * n / LOG2)
    return log_count(exact) - main


def ordered_bell_asymptotic_log(n: int, exact: int | None = None) -> AsymptoticEstimate:
    """B_n ~ n! / (2 (log 2)^(n+1))."""
    _check_n(n)
    lv = log_factorial(n) - LOG2 - (n + 1) * LOGLOG2
    return _with_ratio(lv, exact)


def unlabeled_pole_constant(terms: int = 200) -> float:
    """sum_{m>=2} 1/(m (2^m - 2)): log U(x) minus its m = 1 term, at x = 1/2."""
    return math.fsum(1.0 / (m * ((1 << m) - 2)) for m in range(2, terms + 2))


def unlabeled_asymptotic_log(
    n: int, exact: int | None = None, *, include_secondary_poles: bool = False
) -> AsymptoticEstimate:
    """U_n ~ 2^n e^sqrt(2n) / (sqrt(2 pi) 2^(3/4) e^(1/4) n^(3/4)).

    The published form keeps only the m = 1 term of log U near x = 1/2, so
    its ratio to U_n tends to exp(-0.33479...) rather than 1. With
    ``include_secondary_poles`` the missing factor exp(unlabeled_pole_constant())
    is restored and the ratio tends to 1.
    """
    _check_n(n)
    lv = (
        n * LOG2
        + math.sqrt(2.0 * n)
        - 0.5 * math.log(2.0 * math.pi)
        - 0.75 * LOG2
        - 0.25
        - 0.75 * math.log(n)
    )
    if include_secondary_poles:
        lv += unlabeled_pole_constant()
    return _with_ratio(lv, exact)


def rank_numerator_asymptotic_log(n: int) -> float:
    """log of n! n / (8 (log 2)^(n+2)), the estimate for a_n B_n."""
    _check_n(n)
    return log_factorial(n) + math.log(n) - math.log(8.0) - (n + 2) * LOGLOG2


@dataclass(frozen=True)
class SaddlePoint:
    n: int
    value: float
    expansion: float
    iterations: int

    def __float__(self) -> float:
        return self.value


def _saddle_equation(r: float, n: float) -> float:
    # r U'(r)/U(r) - n, with log U = sum_m (1/m) r^m/(1 - 2r^m); the 1/m cancels
    total = 0.0
    m = 1
    while True:
        y = r**m
        term = y / (1.0 - 2.0 * y) ** 2
        total += term
        if term < 1e-16 * total:
            break
        m += 1
    return total - n


def saddle_point_expansion(n: int) -> float:
    """1/2 - sqrt(8n+1)/(8n) + 1/(8n)."""
    _check_n(n)
    return 0.5 - math.sqrt(8.0 * n + 1.0) / (8.0 * n) + 1.0 / (8.0 * n)


def saddle_point(n: int) -> SaddlePoint:
    """Solve r U'(r)/U(r) = n on (0, 1/2) by Brent's method."""
    _check_n(n)
    lo = 1e-300
    hi = 0.5 - 1e-15
    try:
        root, info = brentq(
            _saddle_equation, lo, hi, args=(float(n),), xtol=1e-17, maxiter=SADDLE_MAX_ITER,
            full_output=True, disp=False,
        )
    except ValueError as exc:
        raise SaddlePointError(f"no sign change bracketing the saddle for n={n}") from exc
    if not info.converged:
        raise SaddlePointError(f"root search did not converge in {SADDLE_MAX_ITER} iterations")
    return SaddlePoint(n, root, saddle_point_expansion(n), info.iterations)
