#!/usr/bin/env python3
"""
Tests for ap_divisors: S_n, A_n, the AP check and the tau identity.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ap_divisors import (
    analyze,
    ap_check,
    nontrivial_small_divisors,
    small_divisors,
    tau_identity_holds,
    tau_relation_check,
)
from arith_core import factorize
from errors import InvalidInputError


def test_small_divisors_examples():
    assert small_divisors(1) == [1]
    assert small_divisors(36) == [1, 2, 3, 4, 6]
    assert small_divisors(60) == [1, 2, 3, 4, 5, 6]


def test_nontrivial_small_divisors_examples():
    assert nontrivial_small_divisors(36) == [2, 3, 4]
    assert nontrivial_small_divisors(24) == [2, 3, 4]
    assert nontrivial_small_divisors(72) == [2, 3, 4, 6]
    assert nontrivial_small_divisors(1) == []
    assert nontrivial_small_divisors(49) == []


def test_square_root_is_small_but_not_nontrivial():
    assert 6 in small_divisors(36)
    assert 6 not in nontrivial_small_divisors(36)


@pytest.mark.parametrize("values, expected", [
    ([], (True, None, None)),
    ([7], (True, 7, None)),
    ([2, 9], (True, 2, 7)),
    ([2, 3, 4, 5, 6], (True, 2, 1)),
    ([2, 3, 4, 6], (False, None, None)),
    ([3, 5, 7], (True, 3, 2)),
])
def test_ap_check(values, expected):
    assert tuple(ap_check(values)) == expected


def test_ap_check_rejects_unsorted_input():
    with pytest.raises(InvalidInputError):
        ap_check([3, 2])
    with pytest.raises(InvalidInputError):
        ap_check([2, 2, 3])


def test_analyze_examples():
    a96 = analyze(96)
    assert not a96.is_ap
    assert a96.nontrivial_small_divisors == (2, 3, 4, 6, 8)
    assert a96.first_term == 2
    assert a96.common_difference is None

    a7 = analyze(7)
    assert a7.k == 0
    assert a7.is_ap
    assert a7.first_term is None

    a105 = analyze(105)
    assert a105.nontrivial_small_divisors == (3, 5, 7)
    assert a105.is_ap
    assert a105.common_difference == 2
    assert a105.tau == 8


def test_analyze_one():
    a = analyze(1)
    assert a.small_divisors == (1,)
    assert a.k == 0
    assert a.is_ap
    assert a.is_square


def test_analyze_accepts_precomputed_factorization():
    f = factorize(60)
    assert analyze(60, f) == analyze(60)
    with pytest.raises(InvalidInputError):
        analyze(61, f)


def test_analyze_to_dict():
    data = analyze(60).to_dict()
    assert data["nontrivial_small_divisors"] == [2, 3, 4, 5, 6]
    assert data["k"] == 5
    assert data["common_difference"] == 1
    assert data["tau"] == 12


@pytest.mark.parametrize("n", [36, 24, 2, 60, 96, 10 ** 12])
def test_tau_relation_check_examples(n):
    assert tau_relation_check(n)


def test_tau_relation_check_rejects_unit():
    with pytest.raises(InvalidInputError):
        tau_relation_check(1)


def test_tau_relation_for_small_range():
    assert all(tau_relation_check(n) for n in range(2, 3000))


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=2, max_value=10 ** 12))
def test_tau_identity_holds_for_random_n(n):
    analysis = analyze(n)
    assert tau_identity_holds(analysis)
    assert analysis.small_divisors[0] == 1
    assert all(d * d < n for d in analysis.nontrivial_small_divisors)
    assert all(n % d == 0 for d in analysis.small_divisors)
    assert len(analysis.small_divisors) == analysis.k + (2 if analysis.is_square else 1)
    root = math.isqrt(n)
    dropped = {1, root} if analysis.is_square else {1}
    assert analysis.nontrivial_small_divisors == tuple(d for d in analysis.small_divisors if d not in dropped)
    if analysis.k >= 1:
        assert analysis.first_term == factorize(n).primes[0]


@settings(max_examples=200)
@given(st.lists(st.integers(min_value=1, max_value=10 ** 6), unique=True, max_size=8))
def test_ap_check_agrees_with_differences(values):
    values = sorted(values)
    verdict = ap_check(values)
    steps = {b - a for a, b in zip(values, values[1:])}
    assert verdict.is_ap == (len(steps) <= 1)
