import math
import random

import numpy as np
import pytest

from primseq import primes as P
from primseq.errors import ResourceLimitError

from oracles import trial_primes

# frozen from a one-off trial-division count run before the build
PI_1E6 = 78498


def test_sieve_small_examples():
    assert P.sieve_primes(10).primes.tolist() == [2, 3, 5, 7]
    assert P.sieve_primes(2).primes.tolist() == [2]
    assert P.sieve_primes(100).count == 25


def test_sieve_matches_trial_division():
    table = P.sieve_primes(2000)
    assert table.primes.tolist() == trial_primes(2000)


def test_sieve_count_1e6(table_1e6):
    assert table_1e6.count == PI_1E6


def test_sieve_errors():
    with pytest.raises(ValueError):
        P.sieve_primes(1)
    with pytest.raises(ResourceLimitError):
        P.sieve_primes(P.MAX_PRIME_LIMIT + 1)
    with pytest.raises(ValueError):
        P.sieve_omega(0)
    with pytest.raises(ResourceLimitError):
        P.sieve_omega(P.MAX_OMEGA_LIMIT + 1)


def test_sieve_segmentation_and_workers_bit_identical(monkeypatch):
    whole = P.sieve_primes(50_000)
    monkeypatch.setattr(P, "_SEGMENT", 1 << 12)
    seg1 = P.sieve_primes(50_000, workers=1)
    seg4 = P.sieve_primes(50_000, workers=4)
    assert np.array_equal(whole.primes, seg1.primes)
    assert np.array_equal(seg1.primes, seg4.primes)


def test_nth_prime(table_1e4):
    assert P.nth_prime(table_1e4, 1) == 2
    assert P.nth_prime(table_1e4, 6) == 13
    assert P.nth_prime(table_1e4, 25) == 97
    with pytest.raises(IndexError):
        P.nth_prime(table_1e4, 0)
    with pytest.raises(IndexError):
        P.nth_prime(table_1e4, table_1e4.count + 1)


def test_count_leq(table_1e4):
    assert table_1e4.count_leq(10) == 4
    assert table_1e4.count_leq(2) == 1
    assert table_1e4.count_leq(1.9) == 0
    with pytest.raises(ValueError):
        table_1e4.count_leq(10_001)


def test_omega_values():
    om = P.sieve_omega(100).omega
    assert om[1] == 0
    assert om[12] == 3  # 2*2*3
    assert om[32] == 5  # 2^5
    assert om[97] == 1
    assert om[64] == 6


def test_omega_multiplicative(omega_1e5):
    om = omega_1e5.omega
    rng = random.Random(1)
    for _ in range(10_000):
        m = rng.randint(1, 10_000)
        n = rng.randint(1, 100_000 // m)
        assert om[m * n] == om[m] + om[n]


def test_omega_crosschecks_prime_count(omega_1e5):
    table = P.sieve_primes(100_000)
    assert int((omega_1e5.omega == 1).sum()) == table.count


def test_nth_prime_bound_checks(table_1e4):
    assert P.check_nth_prime_lower(table_1e4, table_1e4.count) == []
    assert P.check_nth_prime_upper(table_1e4, table_1e4.count) == []
    assert P.check_nth_prime_log(table_1e4, table_1e4.count) == []
    with pytest.raises(ValueError):
        P.check_nth_prime_lower(table_1e4, table_1e4.count + 1)


def test_nth_prime_bounds_spot_values(table_1e4):
    # p_2 = 3 >= 2 log 2; p_6 = 13 <= 6 (log 6 + log log 6); window at n = 100
    assert 3 >= 2 * math.log(2)
    assert 13 <= 6 * (math.log(6) + math.log(math.log(6)))
    p100 = P.nth_prime(table_1e4, 100)
    assert p100 == 541
    assert math.log(100) <= math.log(p100) <= 2 * math.log(100)


def test_bertrand(table_1e6):
    assert P.check_bertrand(table_1e6) == []


def test_mertens_lower(table_1e6):
    chk10 = P.check_mertens_lower(table_1e6, 10)
    assert chk10.passed
    assert abs(chk10.lhs - 1.17619047619048) < 1e-12
    assert abs(chk10.rhs - 0.834032445247956) < 1e-12
    chk2 = P.check_mertens_lower(table_1e6, 2)
    assert chk2.passed
    assert chk2.lhs == 0.5
    assert abs(chk2.rhs - (-0.366512920581664)) < 1e-12
    assert P.check_mertens_lower(table_1e6, 1e6).passed
    with pytest.raises(ValueError):
        P.check_mertens_lower(table_1e6, 1.0)


def test_is_prime_helper():
    assert P.is_prime(2) and P.is_prime(97) and P.is_prime(10_007)
    assert not P.is_prime(1) and not P.is_prime(91) and not P.is_prime(0)
