#!/usr/bin/env python3
"""
Tests for arith_core: primality, factorization, divisors, isqrt and the
segmented smallest-prime-factor sieve.
"""

import math
import random

import pytest
import sympy
from hypothesis import example, given, settings
from hypothesis import strategies as st

import config
from arith_core import (
    Factorization,
    divisors,
    factorize,
    is_prime,
    isqrt,
    primes_up_to,
    spf_sieve,
    tau,
)
from errors import InvalidInputError, MemoryBudgetError

LARGEST_64_BIT_PRIME = 2 ** 64 - 59


def test_is_prime_small_values():
    assert is_prime(2)
    assert not is_prime(1)
    assert not is_prime(0)
    assert is_prime(97)
    assert not is_prime(561)  # Carmichael


def test_is_prime_matches_sympy_below_20000():
    for n in range(20000):
        assert is_prime(n) == sympy.isprime(n), n


@pytest.mark.parametrize("n, expected", [
    (2 ** 61 - 1, True),
    (LARGEST_64_BIT_PRIME, True),
    (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
    (3825123056546413051, False),  # strong pseudoprime to bases 2..23
    (4294967291 * 4294967279, False),
])
def test_is_prime_64_bit(n, expected):
    assert is_prime(n) is expected


def test_is_prime_rejects_out_of_range():
    with pytest.raises(InvalidInputError):
        is_prime(2 ** 64)
    with pytest.raises(InvalidInputError):
        is_prime(-1)


def test_factorize_examples():
    assert factorize(60).factors == ((2, 2), (3, 1), (5, 1))
    assert factorize(1).factors == ()
    assert factorize(96).factors == ((2, 5), (3, 1))


def test_factorize_rejects_zero():
    with pytest.raises(InvalidInputError):
        factorize(0)


def test_factorize_large_cofactors():
    p, q = 4294967279, 4294967291
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    assert factorize(q * q).factors == ((q, 2),)
    assert factorize(LARGEST_64_BIT_PRIME).factors == ((LARGEST_64_BIT_PRIME, 1),)
    assert factorize(2 ** 63).factors == ((2, 63),)
    assert factorize(65537 * 65539 * 65543).factors == ((65537, 1), (65539, 1), (65543, 1))


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=2 ** 64 - 1))
@example(1)
@example(2 ** 64 - 1)
def test_factorization_reconstructs_n(n):
    f = factorize(n)
    assert math.prod(p ** e for p, e in f.factors) == n
    assert all(is_prime(p) for p in f.primes)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=2 ** 40))
def test_factorize_matches_sympy(n):
    assert dict(factorize(n).factors) == sympy.factorint(n)


def test_factorization_rejects_bad_factor_lists():
    with pytest.raises(InvalidInputError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(InvalidInputError):
        Factorization(12, ((2, 1), (3, 1)))
    with pytest.raises(InvalidInputError):
        Factorization(0, ())


def test_factorization_properties():
    f = factorize(36)
    assert f.shape == (2, 2)
    assert f.is_square
    assert str(f) == "2^2 * 3^2"
    assert str(factorize(1)) == "1"


def test_divisors_examples():
    assert divisors(factorize(12)) == [1, 2, 3, 4, 6, 12]
    assert divisors(factorize(1)) == [1]
    assert divisors(factorize(36)) == [1, 2, 3, 4, 6, 9, 12, 18, 36]


def test_tau_examples():
    assert tau(factorize(1)) == 1
    assert tau(factorize(36)) == 9
    assert tau(factorize(60)) == 12


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10 ** 12))
def test_tau_equals_divisor_count(n):
    f = factorize(n)
    divs = divisors(f)
    assert tau(f) == len(divs)
    assert divs == sorted(sympy.divisors(n))


def test_isqrt_examples():
    assert isqrt(36) == (6, True)
    assert isqrt(35) == (5, False)
    assert isqrt(2 ** 62) == (2 ** 31, True)
    assert isqrt(0) == (0, True)


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=2 ** 64 - 1))
def test_isqrt_bounds(n):
    root, square = isqrt(n)
    assert root * root <= n < (root + 1) * (root + 1)
    assert square == (root * root == n)


def test_primes_up_to():
    assert primes_up_to(1) == []
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(10 ** 5) == list(sympy.primerange(2, 10 ** 5 + 1))


def test_spf_sieve_small_segment():
    table = spf_sieve(2, 10)
    assert table[9] == 3
    assert table[8] == 2
    assert table[7] == 7
    assert len(table) == 9
    assert 11 not in table


def test_spf_sieve_single_number():
    assert spf_sieve(100, 100)[100] == 2


def test_spf_sieve_lookup_outside_segment():
    with pytest.raises(InvalidInputError):
        spf_sieve(2, 10)[11]


def test_spf_sieve_matches_factorize_on_random_samples():
    table = spf_sieve(2, 10 ** 6)
    rng = random.Random(20240601)
    for n in rng.sample(range(2, 10 ** 6 + 1), 1000):
        f = factorize(n)
        assert table.factorize(n) == f
        assert table[n] == f.primes[0]


def test_spf_sieve_offset_segment_matches_factorize():
    lo, hi = 10 ** 9, 10 ** 9 + 5000
    table = spf_sieve(lo, hi)
    for f in table.factorizations():
        assert f == factorize(f.n)


def test_spf_lookup_matches_factorize():
    table = spf_sieve(1000, 2000)
    assert [table[n] for n in range(1000, 2001)] == [factorize(n).primes[0] for n in range(1000, 2001)]
    assert table.factorize(1001).primes == (7, 11, 13)


def test_factorizations_cross_chunk_boundaries(monkeypatch):
    monkeypatch.setattr(config, "FACTORIZATION_CHUNK", 7)
    table = spf_sieve(5000, 5100)
    assert list(table.factorizations()) == [factorize(n) for n in range(5000, 5101)]


def test_spf_sieve_segment_starting_at_one():
    table = spf_sieve(1, 4)
    assert table[1] == 1
    assert [f.factors for f in table.factorizations()] == [(), ((2, 1),), ((3, 1),), ((2, 2),)]


def test_spf_sieve_memory_budget():
    with pytest.raises(MemoryBudgetError):
        spf_sieve(1, 1000, max_segment=999)
    with pytest.raises(MemoryBudgetError):
        spf_sieve(1, config.MAX_SEGMENT_SIZE + 1)


def test_spf_sieve_byte_budget():
    with pytest.raises(MemoryBudgetError):
        spf_sieve(1, 1000, max_bytes=1000 * config.SIEVE_BYTES_PER_NUMBER - 1)
    assert len(spf_sieve(1, 1000, max_bytes=1000 * config.SIEVE_BYTES_PER_NUMBER)) == 1000


def test_spf_sieve_byte_budget_counts_listed_primes(monkeypatch):
    monkeypatch.setattr(config, "SIEVE_BYTES_PER_NUMBER", 1)
    # passes the per-number estimate but not the real size of the arrays
    with pytest.raises(MemoryBudgetError):
        spf_sieve(1, 1000, max_bytes=1000)


def test_default_segment_fits_byte_budget():
    assert config.SEGMENT_SIZE * config.SIEVE_BYTES_PER_NUMBER <= config.SIEVE_MEMORY_BUDGET
    assert config.MAX_SEGMENT_SIZE * config.SIEVE_BYTES_PER_NUMBER <= config.SIEVE_MEMORY_BUDGET


def test_spf_sieve_rejects_empty_segment():
    with pytest.raises(InvalidInputError):
        spf_sieve(10, 9)
