import math
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath as mp
import pytest

from gammacheb.errors import CapacityError, DomainError, ScanExhaustedError
from gammacheb.stirling import (
    BernoulliTable,
    bernoulli,
    lngamma_oracle,
    optimal_truncation,
    stirling_term,
)

# B_2 .. B_30 with the standard signs
KNOWN_BERNOULLI = {
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
    16: Fraction(-3617, 510),
    18: Fraction(43867, 798),
    20: Fraction(-174611, 330),
    22: Fraction(854513, 138),
    24: Fraction(-236364091, 2730),
    26: Fraction(8553103, 6),
    28: Fraction(-23749461029, 870),
    30: Fraction(8615841276005, 14322),
}


# ---------------------------------------------------------------------------
# Bernoulli numbers


@pytest.mark.parametrize("two_n,expected", sorted(KNOWN_BERNOULLI.items()))
def test_bernoulli_known_values(two_n, expected):
    assert bernoulli(two_n) == expected


def test_bernoulli_defining_recurrence_is_exact():
    # sum_{k=0}^{n} C(n+1, k) B_k == 0, in rationals with zero tolerance
    def b(k):
        if k == 0:
            return Fraction(1)
        if k == 1:
            return Fraction(-1, 2)
        if k % 2 == 1:
            return Fraction(0)
        return bernoulli(k)

    for n in range(2, 81, 2):
        total = sum(math.comb(n + 1, k) * b(k) for k in range(n + 1))
        assert total == 0


def test_bernoulli_signs_alternate():
    for n in range(1, 40):
        sign = 1 if n % 2 == 1 else -1
        assert bernoulli(2 * n) * sign > 0


def test_bernoulli_rejects_bad_indices():
    for bad in (0, -2, 3, 7):
        with pytest.raises(ValueError):
            bernoulli(bad)


def test_bernoulli_capacity_limit():
    table = BernoulliTable(n_max=5)
    assert table.get(10) == Fraction(5, 66)
    with pytest.raises(CapacityError):
        table.get(12)


def test_bernoulli_concurrent_growth_is_consistent():
    table = BernoulliTable()
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(table.get, [2 * n for n in range(1, 61)] * 4))
    for i, value in enumerate(results):
        two_n = 2 * (i % 60) + 2
        assert value == bernoulli(two_n)


# ---------------------------------------------------------------------------
# series terms


def test_term_n1_is_one_over_12z():
    with mp.workdps(30):
        for z in (1, mp.mpf("2.5"), 10):
            t = stirling_term(1, z)
            assert abs(t * 12 * z - 1) < mp.mpf(10) ** -28


def test_term_n2_is_minus_one_over_360_z_cubed():
    with mp.workdps(30):
        for z in (1, 3, mp.mpf("7.25")):
            t = stirling_term(2, z)
            assert abs(t * 360 * z ** 3 + 1) < mp.mpf(10) ** -28


def test_term_n6_at_z_one_is_the_coefficient():
    with mp.workdps(30):
        t = stirling_term(6, 1)
        assert abs(t - mp.mpf(-691) / 360360) < mp.mpf(10) ** -28
        assert abs(t + mp.mpf("1.9175e-3")) < 1e-7


def test_term_rejects_bad_arguments():
    with pytest.raises(ValueError):
        stirling_term(0, 2)
    with pytest.raises(DomainError):
        stirling_term(1, 0.5)


# ---------------------------------------------------------------------------
# optimal truncation


def test_truncation_at_z1():
    # 1/12 > 1/360 > 1/1260 > 1/1680 < 1/1188: minimum at the fourth term
    rep = optimal_truncation(1)
    assert rep.n_opt == 4
    assert abs(rep.min_term - mp.mpf(1) / 1680) < 1e-12
    assert abs(rep.est_digits - 3.2253) < 1e-3


def test_truncation_matches_exact_rational_scan_at_z10():
    # independent oracle: argmin of |B_2n| / (2n (2n-1) 10^(2n-1)) in exact
    # rational arithmetic
    mags = {
        n: abs(KNOWN_BERNOULLI.get(2 * n, bernoulli(2 * n)))
        / (2 * n * (2 * n - 1) * Fraction(10) ** (2 * n - 1))
        for n in range(1, 61)
    }
    n_best = min(mags, key=mags.get)
    assert all(mags[n + 1] < mags[n] for n in range(1, n_best))      # unimodal
    assert all(mags[n + 1] > mags[n] for n in range(n_best, 60))
    assert n_best == 32  # frozen from the oracle above

    rep = optimal_truncation(10, n_scan=100)
    assert rep.n_opt == n_best
    assert abs(rep.est_digits - 28.284585) < 1e-4


def test_truncation_monotone_in_z():
    assert optimal_truncation(10).est_digits > optimal_truncation(2).est_digits


def test_truncation_scan_exhausted():
    # at z = 200 the terms are still shrinking at n = 50
    with pytest.raises(ScanExhaustedError):
        optimal_truncation(200, n_scan=50)


def test_truncation_rejects_bad_arguments():
    with pytest.raises(DomainError):
        optimal_truncation(0.5)
    with pytest.raises(ValueError):
        optimal_truncation(3, n_scan=1)


# ---------------------------------------------------------------------------
# the ln-gamma bootstrap


def test_oracle_at_integers_one_and_two():
    for z in (1, 2):
        assert abs(lngamma_oracle(z, 30)) < mp.mpf(10) ** -28


def test_oracle_at_eleven_matches_ln_factorial():
    # Gamma(11) = 10! = 3628800 by direct integer multiplication
    with mp.workdps(45):
        got = lngamma_oracle(11, 35)
        want = mp.log(mp.mpf(math.factorial(10)))
        assert abs(got - want) < mp.mpf(10) ** -33


def test_oracle_half_integer_square_root_pi():
    with mp.workdps(40):
        got = mp.exp(lngamma_oracle(mp.mpf("0.5"), 30))
        assert abs(got - mp.sqrt(mp.pi)) < mp.mpf(10) ** -28


def test_oracle_functional_recurrence():
    rng = random.Random(42)
    with mp.workdps(40):
        for _ in range(100):
            z = mp.mpf(rng.uniform(1, 50))
            lhs = lngamma_oracle(z + 1, 30) - lngamma_oracle(z, 30)
            assert abs(lhs - mp.log(z)) < mp.mpf(10) ** -27 * max(1, abs(lhs))


def test_oracle_against_mpmath_loggamma():
    rng = random.Random(8)
    with mp.workdps(45):
        for z in [0.1, 0.9, 1.0, 2.7182, 17.5, 123.0, 4096.0] + [
                rng.uniform(1, 300) for _ in range(10)]:
            got = lngamma_oracle(mp.mpf(z), 35)
            want = mp.loggamma(mp.mpf(z))
            assert abs(got - want) <= mp.mpf(10) ** -33 * max(1, abs(want))


def test_oracle_is_deterministic():
    a = lngamma_oracle(mp.mpf("3.25"), 30)
    b = lngamma_oracle(mp.mpf("3.25"), 30)
    assert a == b


def test_oracle_rejects_nonpositive_arguments():
    for z in (0, -1, -2.5):
        with pytest.raises(DomainError):
            lngamma_oracle(z, 20)


def test_oracle_capacity_error_reports_supported_digits():
    table = BernoulliTable(n_max=4)
    with pytest.raises(CapacityError) as info:
        lngamma_oracle(2, 40, table=table, max_shift=8)
    assert info.value.max_digits is not None
    assert 0 <= info.value.max_digits < 40
    assert "digits" in str(info.value)
