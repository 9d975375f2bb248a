#!/usr/bin/env python3
"""
Small Divisors in Arithmetic Progression

The brute-force oracle: compute S_n (divisors d with d*d <= n) and A_n
(divisors with 1 < d and d*d < n), decide whether A_n is an arithmetic
progression, and check the tau / |A_n| bookkeeping identity.

Every comparison against sqrt(n) is done as an integer comparison d*d vs n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from arith_core import Factorization, divisors, factorize, isqrt, tau
from errors import InvalidInputError


class ApVerdict(NamedTuple):
    is_ap: bool
    first_term: Optional[int]
    common_difference: Optional[int]


@dataclass(frozen=True)
class DivisorAnalysis:
    """
    Everything the oracle knows about n.

    Attributes:
        n: The analysed number
        small_divisors: S_n, ascending
        nontrivial_small_divisors: A_n, ascending
        k: |A_n|
        is_square: Whether n is a perfect square
        is_ap: Whether A_n is an arithmetic progression (k <= 2 always is)
        first_term: min(A_n) when k >= 1
        common_difference: The common difference when is_ap and k >= 2
        tau: Number of divisors of n
    """

    n: int
    small_divisors: Tuple[int, ...]
    nontrivial_small_divisors: Tuple[int, ...]
    k: int
    is_square: bool
    is_ap: bool
    first_term: Optional[int]
    common_difference: Optional[int]
    tau: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "small_divisors": list(self.small_divisors),
            "nontrivial_small_divisors": list(self.nontrivial_small_divisors),
            "k": self.k,
            "is_square": self.is_square,
            "is_ap": self.is_ap,
            "first_term": self.first_term,
            "common_difference": self.common_difference,
            "tau": self.tau,
        }


def _split_small(n: int, f: Factorization) -> Tuple[List[int], List[int], bool]:
    """(S_n, A_n, is_square) from one divisor enumeration."""
    small = [d for d in divisors(f) if d * d <= n]
    _, square = isqrt(n)
    nontrivial = [d for d in small if d > 1 and d * d < n]
    return small, nontrivial, square


def small_divisors(n: int) -> List[int]:
    """S_n: all divisors d of n with d*d <= n, ascending (always contains 1)."""
    return _split_small(n, factorize(n))[0]


def nontrivial_small_divisors(n: int) -> List[int]:
    """A_n: divisors d of n with 1 < d and d*d < n, ascending."""
    return _split_small(n, factorize(n))[1]


def ap_check(values: Sequence[int]) -> ApVerdict:
    """
    Decide whether a strictly ascending list is an arithmetic progression.

    Lists of length 0, 1 and 2 are always progressions; the common
    difference is only reported from two elements on.

    Raises:
        InvalidInputError: values are not strictly ascending
    """
    for left, right in zip(values, values[1:]):
        if right <= left:
            raise InvalidInputError(f"ap_check() needs a strictly ascending list, got {list(values)}")

    if not values:
        return ApVerdict(True, None, None)
    if len(values) == 1:
        return ApVerdict(True, values[0], None)

    step = values[1] - values[0]
    for left, right in zip(values[1:], values[2:]):
        if right - left != step:
            return ApVerdict(False, None, None)
    return ApVerdict(True, values[0], step)


def analyze(n: int, f: Optional[Factorization] = None) -> DivisorAnalysis:
    """
    Build the full DivisorAnalysis of n.

    Args:
        n: Number to analyse (n >= 1)
        f: Precomputed factorization of n (e.g. from a sieve segment)

    Returns:
        DivisorAnalysis: S_n, A_n and the AP verdict
    """
    if f is None:
        f = factorize(n)
    elif f.n != n:
        raise InvalidInputError(f"factorization of {f.n} passed for n = {n}")

    small, nontrivial, square = _split_small(n, f)
    verdict = ap_check(nontrivial)
    return DivisorAnalysis(
        n=n,
        small_divisors=tuple(small),
        nontrivial_small_divisors=tuple(nontrivial),
        k=len(nontrivial),
        is_square=square,
        is_ap=verdict.is_ap,
        first_term=nontrivial[0] if nontrivial else None,
        common_difference=verdict.common_difference,
        tau=tau(f),
    )


def tau_relation_check(n: int, f: Optional[Factorization] = None) -> bool:
    """
    Check tau(n) = 2|A_n| + 3 for squares and 2|A_n| + 2 otherwise.

    Raises:
        InvalidInputError: n < 2 (the identity relies on pairing d with n/d)
    """
    if n < 2:
        raise InvalidInputError(f"tau_relation_check() needs n >= 2, got {n}")
    analysis = analyze(n, f)
    return tau_identity_holds(analysis)


def tau_identity_holds(analysis: DivisorAnalysis) -> bool:
    expected = 2 * analysis.k + (3 if analysis.is_square else 2)
    return analysis.tau == expected
