import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersel.errors import NotPrime, OutOfRange
from hypersel.obstruction import (
    ObstructionCertificate,
    TABLE_COLUMNS,
    is_prime,
    obstruction_table,
    prime_obstruction_holds,
    regular_score_value,
    search_regular,
    table_tsv,
)
from hypersel.structures import is_regular


class TestPrimality:
    def test_small_values(self):
        primes = [k for k in range(2, 60) if is_prime(k)]
        assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]

    def test_below_two(self):
        assert not is_prime(0) and not is_prime(1) and not is_prime(-7)


class TestRegularScoreValue:
    def test_divisible_case(self):
        # every element of 5 appears in C(4,1) pairs; total C(5,2)=10
        assert regular_score_value(5, 2) == 2

    def test_indivisible_case(self):
        assert regular_score_value(4, 2) is None

    def test_range_guard(self):
        with pytest.raises(OutOfRange):
            regular_score_value(3, 4)


class TestCertificate:
    def test_four_two(self):
        cert = prime_obstruction_holds(4, 2)
        assert cert.binom == 6
        assert not cert.divisible_by_m  # 4 does not divide 6
        assert cert.lucas_residue == 1  # C(3,1) = 3 ≡ 1 (mod 2)
        assert cert.identity_holds()    # 2*6 = 4*3
        assert cert.verdict == "regular-impossible"

    def test_prime_equal_to_m(self):
        cert = prime_obstruction_holds(5, 5)
        assert cert.binom == 1 and not cert.divisible_by_m

    def test_rejects_composite_p(self):
        with pytest.raises(NotPrime):
            prime_obstruction_holds(8, 4)

    def test_nondividing_p_unobstructed(self):
        # 2 does not divide 5, and C(5,2)/5 = 2 is integral
        cert = prime_obstruction_holds(5, 2)
        assert cert.divisible_by_m and cert.verdict == "regular-unobstructed"

    def test_p_larger_than_m_rejected(self):
        with pytest.raises(OutOfRange):
            prime_obstruction_holds(3, 5)

    @settings(max_examples=120, deadline=None)
    @given(
        st.sampled_from([2, 3, 5, 7, 11, 13]),
        st.integers(1, 80),
    )
    def test_certificate_arithmetic(self, p, k):
        m = p * k
        cert = prime_obstruction_holds(m, p)
        assert p * cert.binom == m * math.comb(m - 1, p - 1)
        assert cert.lucas_residue == math.comb(m - 1, p - 1) % p == 1
        assert cert.binom % m != 0
        assert cert.verdict == "regular-impossible"


class TestSearch:
    @pytest.mark.parametrize("m,n", [(4, 2), (6, 2), (8, 2)])
    def test_proves_nonexistence(self, m, n):
        res = search_regular(m, n)
        assert res.status == "proven-none"
        assert res.structure is None and res.proven

    @pytest.mark.parametrize("m,n", [(3, 2), (5, 2), (7, 2), (4, 3)])
    def test_finds_witness(self, m, n):
        res = search_regular(m, n)
        assert res.status == "witness"
        assert is_regular(res.structure)
        assert res.structure.size == m and res.structure.n == n

    def test_five_three_witness_exists(self):
        # every element in 6 of the C(5,3)=10 triples, target score 2
        res = search_regular(5, 3)
        assert res.status == "witness"
        assert is_regular(res.structure)
        assert res.nodes <= 50

    def test_budget_flagged_not_raised(self):
        res = search_regular(5, 3, budget=3)
        assert res.status == "budget-exceeded"
        assert res.structure is None and not res.proven


class TestTable:
    def test_rows_for_six(self):
        rows = obstruction_table(6)
        assert [(r.m, r.p) for r in rows] == [
            (2, 2), (3, 3), (4, 2), (5, 5), (6, 2), (6, 3)
        ]
        assert all(not r.divisible for r in rows)
        assert all(r.lucas_residue == 1 for r in rows)
        assert all(r.search_status == "proven-none" for r in rows)

    def test_single_row(self):
        rows = obstruction_table(2)
        assert len(rows) == 1 and (rows[0].m, rows[0].p) == (2, 2)

    def test_range_guard(self):
        with pytest.raises(OutOfRange):
            obstruction_table(10**4 + 1)

    def test_tsv_shape(self):
        text = table_tsv(obstruction_table(4))
        lines = text.split("\n")
        assert lines[0] == "\t".join(TABLE_COLUMNS)
        assert text.endswith("\n") and "\r" not in text
        assert all(len(line.split("\t")) == len(TABLE_COLUMNS) for line in lines[:-1])
