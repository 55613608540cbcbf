"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (outside pytest's capture)
naming every sub-check, then asserts. Run standalone with
``python -m tests.test_acceptance`` for just the eight lines.
"""

from __future__ import annotations

import math
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial

import pytest

from hierorder import asymptotics as asy
from hierorder import series as ser
from hierorder.explicit import explicit_summands, hierarchical_explicit
from hierorder.ranks import labeled_average_rank, labeled_rank_asymptotic_check, labeled_rank_distribution
from hierorder.ranks import rank_numerator_values, unlabeled_rank_distribution
from hierorder.sequences import hierarchical, nested_hierarchical, ordered_bell, stirling2, unlabeled
from hierorder.structures import (
    enumerate_hierarchies,
    enumerate_orderings,
    enumerate_unlabeled_orderings,
    format_structure,
    parse_structure,
    sample_hierarchies,
)

# pinned tolerances and sizes
EQ5_TOL = 1e-8
SLOPE = 0.36067
SLOPE_TOL = 0.02
CHI2_ALPHA = 0.001
CHI2_SAMPLES = 100_000
CHI2_SEED = 20021
EQ4_N = 1000
EQ9_N = 1000
EQ5_N = 50
EQ13_N = 100

H_PRINTED = [1, 1, 4, 23, 173, 1602, 17575, 222497, 3188806, 50988405]
U_PRINTED = [1, 1, 3, 7, 18, 42, 104, 244, 585, 1373]
HH_PRINTED = [1, 1, 6, 52, 588, 8174, 134537, 2554647, 54909468, 1316675221]
H6_PRINTED_TERMS = [1, 45, 405, 405, 260, 2340, 1690, 1125, 3375, 3246, 4683]
H_BFILE = b"0 1\n1 1\n2 4\n3 23\n4 173\n5 1602\n6 17575\n7 222497\n8 3188806\n9 50988405\n"


def _err(e):
    return abs(e.ratio_to_exact - 1.0)


def _rank_err(n):
    return abs(labeled_rank_asymptotic_check(n) - 1.0)


def criterion_1():
    return [
        ("H_0..H_9", [hierarchical(n) for n in range(10)] == H_PRINTED, ""),
        ("U_0..U_9", [unlabeled(n) for n in range(10)] == U_PRINTED, ""),
        ("HH_0..HH_9", [nested_hierarchical(n) for n in range(10)] == HH_PRINTED, ""),
    ]


def criterion_2():
    terms = [s for _, s in explicit_summands(6)]
    return [
        ("eleven summands", sorted(terms) == sorted(H6_PRINTED_TERMS), f"got {terms}"),
        ("total 17575", sum(terms) == 17575, ""),
    ]


def criterion_3():
    h_ok = all(
        hierarchical(n) == hierarchical_explicit(n) == sum(1 for _ in enumerate_orderings(n)) for n in range(1, 8)
    )
    product = ser.unlabeled_ogf(12).counts()
    u_ok = all(
        product[n] == unlabeled(n) == sum(1 for _ in enumerate_unlabeled_orderings(n)) for n in range(1, 13)
    )
    return [("H n<=7 three ways", h_ok, ""), ("U n<=12 three ways", u_ok, "")]


def criterion_4():
    order = 20
    h_series = ser.hierarchical_egf(order).counts() == [hierarchical(n) for n in range(order + 1)]
    b_series = ser.ordered_bell_egf(order).counts() == [ordered_bell(n) for n in range(order + 1)]
    ode = all(c == 0 for c in ser.ode_residual(order).coeffs)
    log_u = ser.log_unlabeled_identity(order)
    u = ser.unlabeled_ogf(order)
    divisors = all(
        log_u.coeffs[k] == Fraction(sum(d * 2 ** (d - 1) for d in range(1, k + 1) if k % d == 0), k)
        for k in range(1, order + 1)
    )
    exp_log = ser.series_exp(log_u) == u and ser.series_log(u) == log_u
    numer = ser.rank_numerator_egf(15)
    rank = all(
        numer.coeffs[n] * factorial(n)
        == Fraction(sum(factorial(i + 1) * stirling2(n, i) for i in range(1, n + 1)), 2)
        for n in range(16)
    )
    rank = rank and rank_numerator_values(15, cross_check=True) is not None
    return [
        ("exp(B-1) coefficients to 20", h_series and b_series, ""),
        ("ODE to 20", ode, ""),
        ("log U exp/log to 20", divisors and exp_log, ""),
        ("rank numerator e.g.f. to 15", rank, ""),
    ]


def criterion_5():
    e4 = [_err(asy.hierarchical_asymptotic_log(n, hierarchical(n))) for n in (EQ4_N // 4, EQ4_N)]
    e5q = _err(asy.ordered_bell_asymptotic_log(EQ5_N // 4, ordered_bell(EQ5_N // 4)))
    e5 = _err(asy.ordered_bell_asymptotic_log(EQ5_N, ordered_bell(EQ5_N)))
    e9 = [_err(asy.unlabeled_asymptotic_log(n, unlabeled(n))) for n in (EQ9_N // 4, EQ9_N)]
    e13 = [_rank_err(n) for n in (EQ13_N // 4, EQ13_N)]
    c_text = f"{asy.constant_C():.2f}"
    return [
        ("H estimate decays", e4[1] < e4[0], f"{e4[0]:.3g} -> {e4[1]:.3g}"),
        ("B estimate decays", e5 < e5q, f"{e5q:.3g} -> {e5:.3g}"),
        (f"B within {EQ5_TOL:g} at {EQ5_N}", e5 < EQ5_TOL, f"{e5:.3g}"),
        ("U estimate decays", e9[1] < e9[0], f"{e9[0]:.4g} -> {e9[1]:.4g}"),
        ("rank numerator decays", e13[1] < e13[0], f"{e13[0]:.3g} -> {e13[1]:.3g}"),
        ("C = 1038.97", c_text == "1038.97", c_text),
    ]


def criterion_6():
    mean_ok = all(unlabeled_rank_distribution(n).mean == Fraction(n + 3, 4) for n in range(1, 201))
    slope = float(labeled_average_rank(500)) / 500
    import itertools
    from collections import Counter

    counts, total = Counter(), 0
    for f in itertools.product(range(1, 7), repeat=6):
        if set(f) == set(range(1, max(f) + 1)):
            total += 1
            counts.update(f)
    enum6 = tuple(Fraction(counts[r], total * 6) for r in range(1, 7))
    n3_l = labeled_rank_distribution(3).probs == (Fraction(6, 13), Fraction(5, 13), Fraction(2, 13))
    n3_u = unlabeled_rank_distribution(3).probs == (Fraction(7, 12), Fraction(1, 3), Fraction(1, 12))
    return [
        ("unlabeled mean (n+3)/4 to 200", mean_ok, ""),
        (f"a_500/500 within {SLOPE_TOL}", abs(slope - SLOPE) < SLOPE_TOL, f"{slope:.5f}"),
        ("n=6 matches enumeration", labeled_rank_distribution(6).probs == enum6, ""),
        ("n=3 distributions", n3_l and n3_u, ""),
    ]


def criterion_7():
    from collections import Counter

    from scipy.stats import chisquare

    heights = all(
        Counter(h.height for h in enumerate_hierarchies(n))
        == {h: factorial(h) * stirling2(n, h) for h in range(1, n + 1)}
        for n in range(1, 8)
    )
    bell = all(ordered_bell(n) == sum(factorial(h) * stirling2(n, h) for h in range(n + 1)) for n in range(13))
    draws = Counter(format_structure(h) for h in sample_hierarchies(3, CHI2_SAMPLES, seed=CHI2_SEED))
    p = chisquare(list(draws.values())).pvalue if len(draws) == 13 else 0.0
    round_trip = all(
        parse_structure(format_structure(o), n) == o for n in range(1, 7) for o in enumerate_orderings(n)
    )
    return [
        ("height decomposition n<=7", heights, ""),
        ("B_n = sum h! S(n,h) n<=12", bell, ""),
        ("sampler chi-square", p > CHI2_ALPHA, f"p = {p:.4f}"),
        ("format/parse n<=6", round_trip, ""),
    ]


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "hierorder", *args], capture_output=True, timeout=300)


def criterion_8():
    seq = _cli("seq", "H", "0", "9", "bfile")
    good = _cli("verify", "full")
    bad = _cli("verify", "full", "--inject-fault")
    return [
        ("seq H 0 9 bfile byte-exact", seq.returncode == 0 and seq.stdout == H_BFILE, ""),
        ("verify full exits 0", good.returncode == 0, good.stdout.decode().splitlines()[-1]),
        ("verify full fails under fault", bad.returncode != 0, bad.stdout.decode().splitlines()[-1]),
    ]


CRITERIA = {
    1: ("sequence values", criterion_1, 1.0),
    2: ("termwise H_6", criterion_2, 1.0),
    3: ("three-way oracles", criterion_3, 30.0),
    4: ("series identities", criterion_4, 5.0),
    5: ("asymptotic convergence", criterion_5, 60.0),
    6: ("rank statistics", criterion_6, 10.0),
    7: ("structural properties", criterion_7, 60.0),
    8: ("CLI contract", criterion_8, 60.0),
}


def evaluate(number):
    title, fn, budget = CRITERIA[number]
    start = time.perf_counter()
    parts = fn()
    elapsed = time.perf_counter() - start
    parts.append((f"under {budget:g}s", elapsed < budget, f"{elapsed:.2f}s"))
    ok = all(passed for _, passed, _ in parts)
    shown = "; ".join(
        f"{'ok' if passed else 'FAILED'} {name}" + (f" ({detail})" if detail else "") for name, passed, detail in parts
    )
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} {title}: {shown}"
    return ok, line, [name for name, passed, _ in parts if not passed]


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line, failed = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, f"failed: {failed}"


if __name__ == "__main__":
    results = [evaluate(k) for k in sorted(CRITERIA)]
    for _, line, _ in results:
        print(line)
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
