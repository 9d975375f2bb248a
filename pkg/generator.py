#!/usr/bin/env python3
"""
Family Generator

Constructive enumeration of every family up to a bound, the search for
prime triples p < q < r with 2q = p + r, and the merged sequence of all
n >= 2 whose nontrivial small divisors are in arithmetic progression.
"""

from __future__ import annotations

import bisect
import heapq
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List

from arith_core import is_prime, primes_up_to
from classifier import SPORADIC, THEOREM_FAMILIES, CaseId
from errors import ClassificationError, InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class PrimeTriple:
    """Primes p < q < r with 2q = p + r."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        if not (self.p < self.q < self.r) or 2 * self.q != self.p + self.r:
            raise InvalidInputError(f"({self.p}, {self.q}, {self.r}) is not an AP prime triple")

    @property
    def product(self) -> int:
        return self.p * self.q * self.r

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "product": self.product}


def _iroot(n: int, k: int) -> int:
    """Largest x with x**k <= n."""
    if n < 1:
        return 0
    x = int(round(n ** (1.0 / k)))
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def prime_ap_triples(max_n: int) -> List[PrimeTriple]:
    """
    All prime triples with p*q*r <= max_n, ordered by product.

    p = 2 never works (r = 2q - 2 is even), and q*q < q*r <= max_n / p, so
    only primes q <= sqrt(max_n / 3) are sieved; r = 2q - p is tested with
    the deterministic primality check.
    """
    if max_n < 2:
        raise InvalidInputError(f"prime_ap_triples() needs max_n >= 2, got {max_n}")

    primes = primes_up_to(math.isqrt(max_n // 3))
    triples = []
    for i, p in enumerate(primes):
        if p == 2:
            continue
        if p * (p + 2) * (p + 4) > max_n:
            break
        for q in primes[i + 1:]:
            r = 2 * q - p
            if p * q * r > max_n:
                break
            if is_prime(r):
                triples.append(PrimeTriple(p, q, r))

    triples.sort(key=lambda t: (t.product, t.p))
    logger.debug("Found %d prime triples up to %d", len(triples), max_n)
    return triples


def _prime_powers(primes: List[int], exponents, max_n: int) -> List[int]:
    out = []
    for e in exponents:
        for p in primes:
            value = p ** e
            if value > max_n:
                break
            out.append(value)
    return out


def _family_i(primes, max_n):
    return _prime_powers(primes, (1, 2), max_n)


def _family_ii(primes, max_n):
    out = []
    for i, p in enumerate(primes):
        if p * p >= max_n:
            break
        end = bisect.bisect_right(primes, max_n // p)
        out.extend(p * q for q in primes[i + 1:end])
    return out


def _family_iii(primes, max_n):
    return _prime_powers(primes, (3, 4), max_n)


def _family_iv(primes, max_n):
    return _prime_powers(primes, (5,), max_n)


def _family_v(primes, max_n):
    # n = p q^2 with p < q
    out = []
    for j, q in enumerate(primes):
        if 2 * q * q > max_n:
            break
        end = min(j, bisect.bisect_right(primes, max_n // (q * q)))
        out.extend(p * q * q for p in primes[:end])
    return out


def _family_vi(primes, max_n):
    # n = p^2 q with q > p^2
    out = []
    for p in primes:
        p2 = p * p
        if p2 * p2 >= max_n:
            break
        start = bisect.bisect_right(primes, p2)
        end = bisect.bisect_right(primes, max_n // p2)
        out.extend(p2 * q for q in primes[start:end])
    return out


def _family_vii(primes, max_n):
    # n = p^2 q with p < q < p^2
    out = []
    for i, p in enumerate(primes):
        p2 = p * p
        if p2 * p >= max_n:
            break
        end = bisect.bisect_right(primes, min(p2, max_n // p2))
        out.extend(p2 * q for q in primes[i + 1:end])
    return out


def _family_viii(primes, max_n):
    return _prime_powers(primes, (6,), max_n)


def _family_x(primes, max_n):
    return [t.product for t in prime_ap_triples(max_n)] if max_n >= 2 else []


def _sporadic(case_id: CaseId) -> Callable[[List[int], int], List[int]]:
    value = next(n for n, c in SPORADIC.items() if c is case_id)
    return lambda primes, max_n: [value] if value <= max_n else []


# Largest prime each family can need, as a function of max_n.
_PRIME_BOUND: Dict[CaseId, Callable[[int], int]] = {
    CaseId.I: lambda m: m,
    CaseId.II: lambda m: m // 2,
    CaseId.III: lambda m: _iroot(m, 3),
    CaseId.IV: lambda m: _iroot(m, 5),
    CaseId.V: lambda m: math.isqrt(m // 2),
    CaseId.VI: lambda m: m // 4,
    CaseId.VII: lambda m: m // 4,
    CaseId.VIII: lambda m: _iroot(m, 6),
}

_BUILDERS = {
    CaseId.I: _family_i,
    CaseId.II: _family_ii,
    CaseId.III: _family_iii,
    CaseId.IV: _family_iv,
    CaseId.V: _family_v,
    CaseId.VI: _family_vi,
    CaseId.VII: _family_vii,
    CaseId.VIII: _family_viii,
    CaseId.IX: _sporadic(CaseId.IX),
    CaseId.X: _family_x,
    CaseId.XI: _sporadic(CaseId.XI),
    CaseId.XII: _sporadic(CaseId.XII),
}


def enumerate_family(case_id: CaseId, max_n: int) -> List[int]:
    """
    All members n <= max_n of one family, ascending, built from primes
    rather than by filtering the integers.

    Args:
        case_id: One of I..XII
        max_n: Inclusive upper bound (>= 1)

    Returns:
        List[int]: Members of the family
    """
    if case_id not in _BUILDERS:
        raise InvalidInputError(f"{case_id} is not a family")
    if max_n < 1:
        raise InvalidInputError(f"enumerate_family() needs max_n >= 1, got {max_n}")

    bound = _PRIME_BOUND.get(case_id)
    primes = primes_up_to(bound(max_n)) if bound else []
    members = sorted(_BUILDERS[case_id](primes, max_n))
    logger.debug("Family %s up to %d: %d members", case_id, max_n, len(members))
    return members


def ap_numbers(max_n: int) -> List[int]:
    """
    Every n in [2, max_n] whose A_n is in AP: the merged families.

    Raises:
        ClassificationError: Two families produced the same n
    """
    if max_n < 2:
        raise InvalidInputError(f"ap_numbers() needs max_n >= 2, got {max_n}")

    families = [enumerate_family(case_id, max_n) for case_id in THEOREM_FAMILIES]
    merged: List[int] = []
    for n in heapq.merge(*families):
        if merged and merged[-1] == n:
            owners = [str(c) for c, members in zip(THEOREM_FAMILIES, families) if n in members]
            raise ClassificationError(f"{n} is claimed by families {', '.join(owners)}")
        merged.append(n)
    return merged
