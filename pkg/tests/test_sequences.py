import math
import threading

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hierorder.sequences import (
    InternalConsistencyError,
    SequenceKind,
    SequenceTable,
    binomial,
    compositions,
    format_count,
    hierarchical,
    hierarchical_sets,
    iter_sequence,
    nested_hierarchical,
    ordered_bell,
    parse_count,
    sequence,
    stirling2,
    stirling_row,
    table,
    unlabeled,
    unlabeled_alpha,
)

from .oracles import (
    ordered_set_partitions_bruteforce,
    set_partitions_with_blocks,
    unlabeled_orderings_bruteforce,
)

H_LISTED = [1, 1, 4, 23, 173, 1602, 17575, 222497, 3188806, 50988405]
U_LISTED = [1, 1, 3, 7, 18, 42, 104, 244, 585, 1373]
HH_LISTED = [1, 1, 6, 52, 588, 8174, 134537, 2554647, 54909468, 1316675221]


class TestOrderedBell:
    def test_empty_set(self):
        assert ordered_bell(0) == 1

    @pytest.mark.parametrize("n, value", [(2, 3), (3, 13), (4, 75), (5, 541), (6, 4683)])
    def test_factors_in_h6_expansion(self, n, value):
        assert ordered_bell(n) == value

    def test_seven_matches_brute_force(self):
        # frozen from ordered_set_partitions_bruteforce(7)
        assert ordered_set_partitions_bruteforce(7) == 47293
        assert ordered_bell(7) == 47293

    @pytest.mark.parametrize("n", range(1, 7))
    def test_brute_force_small(self, n):
        assert ordered_bell(n) == ordered_set_partitions_bruteforce(n)

    @pytest.mark.parametrize("n", range(13))
    def test_sum_over_heights(self, n):
        assert ordered_bell(n) == sum(math.factorial(h) * stirling2(n, h) for h in range(n + 1))


class TestHierarchical:
    def test_listed_values(self):
        assert [hierarchical(n) for n in range(10)] == H_LISTED

    def test_three_elements(self):
        assert hierarchical(3) == 23


class TestUnlabeled:
    @pytest.mark.parametrize("k, value", [(1, 1), (2, 5), (3, 13), (4, 1 + 4 + 32), (6, 1 + 4 + 12 + 192)])
    def test_alpha(self, k, value):
        assert unlabeled_alpha(k) == value

    def test_alpha_rejects_zero(self):
        with pytest.raises(ValueError):
            unlabeled_alpha(0)

    def test_listed_values(self):
        assert [unlabeled(n) for n in range(10)] == U_LISTED

    def test_u3_by_hand(self):
        assert (unlabeled_alpha(1) * 3 + unlabeled_alpha(2) * 1 + unlabeled_alpha(3) * 1) // 3 == 7
        assert unlabeled(3) == 7

    @pytest.mark.parametrize("n", range(1, 13))
    def test_matches_multiset_count(self, n):
        assert unlabeled(n) == unlabeled_orderings_bruteforce(n)

    def test_inexact_division_is_reported(self):
        def bad_step(values, n):
            q, r = divmod(values[n - 1] * 3 + 1, n)
            if r:
                raise InternalConsistencyError("remainder")
            return q

        t = SequenceTable(None, bad_step)
        with pytest.raises(InternalConsistencyError):
            t[2]


class TestNested:
    def test_listed_values(self):
        assert [nested_hierarchical(n) for n in range(10)] == HH_LISTED

    def test_single_application_of_exponential_formula(self):
        assert [hierarchical_sets(n) for n in range(5)] == [1, 1, 5, 36, 338]

    def test_one_element(self):
        assert nested_hierarchical(1) == 1


class TestSmallPieces:
    @pytest.mark.parametrize("n, value", [(1, 1), (3, 4), (10, 512)])
    def test_compositions(self, n, value):
        assert compositions(n) == value

    def test_compositions_reject_zero(self):
        with pytest.raises(ValueError):
            compositions(0)

    def test_stirling(self):
        assert stirling2(3, 2) == set_partitions_with_blocks(3, 2) == 3
        assert all(stirling2(n, n) == 1 for n in range(10))
        assert stirling_row(4) == (0, 1, 7, 6, 1)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_stirling_brute_force(self, n):
        assert [stirling2(n, k) for k in range(n + 1)] == [
            set_partitions_with_blocks(n, k) for k in range(n + 1)
        ]

    def test_stirling_rejects_h_above_n(self):
        with pytest.raises(ValueError):
            stirling2(3, 4)

    def test_binomial(self):
        assert binomial(5, 2) == 10
        assert binomial(6, 3) == 20
        assert all(binomial(n, 0) == 1 for n in range(8))
        with pytest.raises(ValueError):
            binomial(2, 3)

    @pytest.mark.parametrize("bad", [-1, 1.5, True])
    def test_bad_index(self, bad):
        with pytest.raises((ValueError, TypeError)):
            hierarchical(bad)


class TestTables:
    def test_seed_is_one(self):
        for kind in SequenceKind:
            assert table(kind).values(0) == [1]

    def test_append_only(self):
        t = table("H")
        before = t.values(20)
        t.extend(40)
        assert t.values(20) == before

    def test_reproducible_decimal_strings(self):
        first = [format_count(v) for v in table("B").values(50)]
        fresh = SequenceTable(SequenceKind.ORDERED_BELL, table("B")._step)
        assert [format_count(v) for v in fresh.values(50)] == first

    def test_concurrent_readers(self):
        t = table("U")
        t.extend(300)
        expected = t.values(300)
        seen = []

        def read():
            seen.append(t.values(300))

        threads = [threading.Thread(target=read) for _ in range(8)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
        assert all(s == expected for s in seen)

    def test_iter_sequence(self):
        assert list(iter_sequence("C", 1, 4)) == [(1, 1), (2, 2), (3, 4), (4, 8)]
        assert sequence("HH", 4) == 588


class TestDecimal:
    @given(st.integers(min_value=0, max_value=10**50))
    def test_round_trip(self, v):
        assert parse_count(format_count(v)) == v

    def test_round_trip_beyond_default_digit_limit(self):
        v = hierarchical(1500)
        assert len(format_count(v)) > 4300
        assert parse_count(format_count(v)) == v

    @pytest.mark.parametrize("text", ["", "-1", "1.0", "١٢"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_count(text)

    def test_counts_nonnegative(self):
        with pytest.raises(ValueError):
            format_count(-3)
