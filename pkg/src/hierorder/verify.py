"""Cross-module oracle checks run by ``hierorder verify``."""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import asymptotics as asy
from . import series as ser
from . import structures as st
from .explicit import explicit_summands, hierarchical_explicit
from .ranks import (
    labeled_average_rank,
    labeled_rank_asymptotic_check,
    labeled_rank_distribution,
    rank_numerator_values,
    unlabeled_rank_distribution,
)
from .sequences import (
    SequenceKind,
    hierarchical,
    nested_hierarchical,
    ordered_bell,
    stirling2,
    table,
    unlabeled,
)

KNOWN_H = (1, 1, 4, 23, 173, 1602, 17575, 222497, 3188806, 50988405)
KNOWN_U = (1, 1, 3, 7, 18, 42, 104, 244, 585, 1373)
KNOWN_HH = (1, 1, 6, 52, 588, 8174, 134537, 2554647, 54909468, 1316675221)
KNOWN_B = {2: 3, 3: 13, 4: 75, 5: 541, 6: 4683}

# the eleven terms of the worked n = 6 expansion, keyed by parts
H6_TERMS = {
    (1, 1, 1, 1, 1, 1): 1,
    (2, 1, 1, 1, 1): 45,
    (2, 2, 1, 1): 405,
    (2, 2, 2): 405,
    (3, 1, 1, 1): 260,
    (3, 2, 1): 2340,
    (3, 3): 1690,
    (4, 1, 1): 1125,
    (4, 2): 3375,
    (5, 1): 3246,
    (6,): 4683,
}

C_PRINTED = "1038.97"


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


Check = Callable[[bool], tuple[bool, str]]


def _sequence_values(full: bool) -> tuple[bool, str]:
    got = (
        tuple(hierarchical(n) for n in range(10)),
        tuple(unlabeled(n) for n in range(10)),
        tuple(nested_hierarchical(n) for n in range(10)),
    )
    ok = got == (KNOWN_H, KNOWN_U, KNOWN_HH)
    return ok, "H, U, HH for n = 0..9"


def _ordered_bell_values(full: bool) -> tuple[bool, str]:
    bad = {n: ordered_bell(n) for n, v in KNOWN_B.items() if ordered_bell(n) != v}
    return not bad, f"mismatches {bad}" if bad else "B_2..B_6 = 3, 13, 75, 541, 4683"


def _h6_termwise(full: bool) -> tuple[bool, str]:
    terms = {p.parts(): s for p, s in explicit_summands(6)}
    ok = terms == H6_TERMS and sum(terms.values()) == 17575
    return ok, f"{len(terms)} summands, total {sum(terms.values())}"


def _three_way_h(full: bool) -> tuple[bool, str]:
    top = 7 if full else 5
    for n in range(1, top + 1):
        enum_count = sum(1 for _ in st.enumerate_orderings(n))
        if not hierarchical(n) == hierarchical_explicit(n) == enum_count:
            return False, f"disagreement at n={n}"
    return True, f"recurrence = explicit formula = enumeration for n <= {top}"


def _three_way_u(full: bool) -> tuple[bool, str]:
    top = 12 if full else 8
    product = ser.unlabeled_ogf(top).counts()
    for n in range(1, top + 1):
        enum_count = sum(1 for _ in st.enumerate_unlabeled_orderings(n))
        if not unlabeled(n) == product[n] == enum_count:
            return False, f"disagreement at n={n}"
    return True, f"recurrence = product = enumeration for n <= {top}"


def _series_h(full: bool) -> tuple[bool, str]:
    order = 20 if full else 12
    ok = ser.hierarchical_egf(order).counts() == [hierarchical(n) for n in range(order + 1)]
    ok = ok and ser.nested_hierarchical_egf(order).counts() == [
        nested_hierarchical(n) for n in range(order + 1)
    ]
    ok = ok and ser.ordered_bell_check_series(order) == ser.Series.constant(1, order, ser.Flavor.EGF)
    return ok, f"exp(B(x)-1), nested EGF and B(x)(2-e^x) = 1 to order {order}"


def _series_ode(full: bool) -> tuple[bool, str]:
    order = 20 if full else 12
    res = ser.ode_residual(order)
    return all(c == 0 for c in res.coeffs), f"H'(2-e^x)^2/e^x - H = 0 to order {res.order}"


def _series_log_u(full: bool) -> tuple[bool, str]:
    order = 20 if full else 12
    u = ser.unlabeled_ogf(order)
    closed = ser.log_unlabeled_identity(order)
    ok = ser.series_log(u) == closed and ser.series_exp(closed) == u
    return ok, f"log U(x) closed form, exp/log both ways to order {order}"


def _series_rank(full: bool) -> tuple[bool, str]:
    order = 15 if full else 10
    try:
        rank_numerator_values(order, cross_check=True)
    except ArithmeticError as exc:
        return False, str(exc)
    return True, f"2 a_n B_n = sum (i+1)! S(n,i) matches the EGF to order {order}"


def _bell_stirling(full: bool) -> tuple[bool, str]:
    for n in range(13):
        s = sum(math.factorial(h) * stirling2(n, h) for h in range(n + 1))
        if s != ordered_bell(n):
            return False, f"fails at n={n}"
    return True, "B_n = sum h! S(n,h) for n <= 12"


def _height_decomposition(full: bool) -> tuple[bool, str]:
    top = 7 if full else 5
    for n in range(1, top + 1):
        heights = Counter(h.height for h in st.enumerate_hierarchies(n))
        want = {h: math.factorial(h) * stirling2(n, h) for h in range(1, n + 1)}
        if dict(heights) != want:
            return False, f"fails at n={n}"
    return True, f"height h occurs h! S(n,h) times for n <= {top}"


def _rank_small(full: bool) -> tuple[bool, str]:
    lab = labeled_rank_distribution(3)
    unl = unlabeled_rank_distribution(3)
    ok = lab.probs == (Fraction(6, 13), Fraction(5, 13), Fraction(2, 13)) and lab.mean == Fraction(22, 13)
    ok = ok and unl.probs == (Fraction(7, 12), Fraction(1, 3), Fraction(1, 12)) and unl.mean == Fraction(3, 2)
    return ok, "n = 3 labeled and unlabeled distributions"


def _rank_enumeration(full: bool) -> tuple[bool, str]:
    top = 6 if full else 4
    for n in range(1, top + 1):
        counts = Counter()
        total = 0
        for h in st.enumerate_hierarchies(n):
            for r, b in enumerate(h.blocks, 1):
                counts[r] += len(b)
            total += n
        empirical = tuple(Fraction(counts[r], total) for r in range(1, n + 1))
        if empirical != labeled_rank_distribution(n).probs:
            return False, f"labeled ranks disagree at n={n}"
        counts = Counter()
        total = 0
        for c in st.enumerate_compositions(n):
            for r, p in enumerate(c.parts, 1):
                counts[r] += p
            total += n
        empirical = tuple(Fraction(counts[r], total) for r in range(1, n + 1))
        if empirical != unlabeled_rank_distribution(n).probs:
            return False, f"unlabeled ranks disagree at n={n}"
    return True, f"rank distributions = enumeration for n <= {top}"


def _unlabeled_mean(full: bool) -> tuple[bool, str]:
    top = 200 if full else 50
    for n in range(1, top + 1):
        if unlabeled_rank_distribution(n).mean != Fraction(n + 3, 4):
            return False, f"fails at n={n}"
    return True, f"unlabeled mean = (n+3)/4 for n <= {top}"


def _labeled_mean_limit(full: bool) -> tuple[bool, str]:
    n = 500 if full else 200
    dev = abs(float(labeled_average_rank(n)) / n - 1 / (4 * asy.LOG2))
    return dev < 0.02, f"|a_n/n - 1/(4 log 2)| = {dev:.5f} at n={n}"


def _constant_c(full: bool) -> tuple[bool, str]:
    c = asy.constant_C()
    return f"{c:.2f}" == C_PRINTED, f"C = {c:.6f}"


def _decreasing(errors: dict[int, float]) -> bool:
    ns = sorted(errors)
    return errors[ns[-1]] < errors[ns[0]]


def _asym_bell(full: bool) -> tuple[bool, str]:
    err = {n: abs(asy.ordered_bell_asymptotic_log(n, ordered_bell(n)).ratio_to_exact - 1) for n in (12, 50)}
    return _decreasing(err) and err[50] < 1e-8, f"|ratio-1| at 12, 50: {err[12]:.2e}, {err[50]:.2e}"


def _asym_h(full: bool) -> tuple[bool, str]:
    hi = 1000 if full else 200
    err = {n: abs(asy.hierarchical_asymptotic_log(n, hierarchical(n)).ratio_to_exact - 1) for n in (hi // 4, hi)}
    return _decreasing(err), f"|ratio-1| at {hi // 4}, {hi}: {err[hi // 4]:.3e}, {err[hi]:.3e}"


def _asym_u(full: bool) -> tuple[bool, str]:
    hi = 1600 if full else 400
    err = {
        n: abs(asy.unlabeled_asymptotic_log(n, unlabeled(n), include_secondary_poles=True).ratio_to_exact - 1)
        for n in (hi // 4, hi)
    }
    return _decreasing(err), (
        f"with secondary-pole factor, |ratio-1| at {hi // 4}, {hi}: {err[hi // 4]:.3e}, {err[hi]:.3e}"
    )


def _asym_rank(full: bool) -> tuple[bool, str]:
    err = {n: abs(labeled_rank_asymptotic_check(n) - 1) for n in (25, 100)}
    return _decreasing(err) and err[100] < 0.02, f"|ratio-1| at 25, 100: {err[25]:.3e}, {err[100]:.3e}"


def _saddle(full: bool) -> tuple[bool, str]:
    sp = asy.saddle_point(1000)
    diff = abs(sp.value - sp.expansion)
    return 0 < sp.value < 0.5 and diff < 1e-4, f"r_1000 = {sp.value:.10f}, expansion gap {diff:.2e}"


def _sampler(full: bool) -> tuple[bool, str]:
    from scipy.stats import chisquare

    samples = 100_000 if full else 20_000
    index = {st.format_structure(h): i for i, h in enumerate(st.enumerate_hierarchies(3))}
    counts = [0] * len(index)
    for h in st.sample_hierarchies(3, samples, seed=20021):
        counts[index[st.format_structure(h)]] += 1
    p = chisquare(counts).pvalue
    return p > 0.001, f"chi-square over 13 hierarchies, {samples} draws, p = {p:.4f}"


def _round_trip(full: bool) -> tuple[bool, str]:
    top = 6 if full else 4
    for n in range(1, top + 1):
        texts = set()
        for s in st.enumerate_orderings(n):
            t = st.format_structure(s)
            if st.parse_structure(t, n) != s:
                return False, f"round trip fails for {t!r}"
            texts.add(t)
        if len(texts) != hierarchical(n):
            return False, f"duplicates at n={n}"
    return True, f"format/parse identity on all orderings for n <= {top}"


CHECKS: list[tuple[str, Check]] = [
    ("sequence values H, U, HH", _sequence_values),
    ("ordered Bell values", _ordered_bell_values),
    ("H_6 termwise expansion", _h6_termwise),
    ("H_n three-way oracle", _three_way_h),
    ("U_n three-way oracle", _three_way_u),
    ("EGF identities", _series_h),
    ("differential equation", _series_ode),
    ("log U(x) identity", _series_log_u),
    ("rank numerator EGF", _series_rank),
    ("B_n from Stirling numbers", _bell_stirling),
    ("height decomposition", _height_decomposition),
    ("rank distributions n=3", _rank_small),
    ("rank distributions vs enumeration", _rank_enumeration),
    ("unlabeled mean rank", _unlabeled_mean),
    ("labeled mean rank limit", _labeled_mean_limit),
    ("constant C", _constant_c),
    ("B_n asymptotic convergence", _asym_bell),
    ("H_n asymptotic convergence", _asym_h),
    ("U_n asymptotic convergence", _asym_u),
    ("a_n B_n asymptotic convergence", _asym_rank),
    ("saddle point", _saddle),
    ("sampler uniformity", _sampler),
    ("format/parse round trip", _round_trip),
]


def run_checks(level: str = "quick") -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    results = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            passed, detail = fn(full)
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - t0))
    return results


def inject_fault(kind: SequenceKind | str = SequenceKind.HIERARCHICAL, n: int = 5) -> None:
    """Corrupt one memoized table entry in place. For exercising failure paths only."""
    t = table(kind)
    t.extend(n)
    t._values[n] += 1
