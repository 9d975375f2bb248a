#!/usr/bin/env python3
"""
Arithmetic Core

Exact integer arithmetic used by every other module: deterministic 64-bit
primality, factorization, divisor enumeration, and a segmented
smallest-prime-factor sieve for bulk ranges.

All values are immutable once built and safe to share across threads and
worker processes.
"""

from __future__ import annotations

import logging
import math
import time
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import numpy as np

import config
from errors import ApDivError, InvalidInputError, MemoryBudgetError

logger = logging.getLogger(__name__)

UINT64_LIMIT = 1 << 64

# Miller-Rabin with these witnesses is exact below 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Products accumulated between gcd calls in Brent's rho.
_RHO_BATCH = 128

# Every n <= 2**64 has at most 15 distinct prime factors.
_MAX_DISTINCT_PRIMES = 15


def _check_uint64(n: int) -> None:
    if n < 0 or n >= UINT64_LIMIT:
        raise InvalidInputError(f"{n} is outside the unsigned 64-bit range")


@dataclass(frozen=True)
class Factorization:
    """
    Ordered prime-power decomposition of n.

    Attributes:
        n: The factored number (1 <= n < 2**64)
        factors: (prime, exponent) pairs, primes strictly ascending
    """

    n: int
    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"Factorization needs n >= 1, got {self.n}")
        product = 1
        previous = 1
        for p, e in self.factors:
            if p <= previous or e < 1:
                raise InvalidInputError(f"malformed factor list for {self.n}: {self.factors}")
            previous = p
            product *= p ** e
        if product != self.n:
            raise InvalidInputError(f"factors {self.factors} multiply to {product}, not {self.n}")

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> Tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    @property
    def shape(self) -> Tuple[int, ...]:
        """Exponent sequence ordered by ascending prime, e.g. 12 -> (2, 1)."""
        return self.exponents

    @property
    def is_square(self) -> bool:
        return all(e % 2 == 0 for _, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def is_prime(n: int) -> bool:
    """
    Deterministic Miller-Rabin test for the full unsigned 64-bit range.

    Args:
        n: Number to test (0 <= n < 2**64)

    Returns:
        bool: True iff n has exactly two positive divisors
    """
    _check_uint64(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_mask(limit: int) -> np.ndarray:
    """Boolean Eratosthenes mask over [0, limit]."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return mask


@lru_cache(maxsize=8)
def _prime_array(limit: int) -> np.ndarray:
    primes = np.flatnonzero(_prime_mask(limit)).astype(np.int64)
    primes.flags.writeable = False
    return primes


def primes_up_to(limit: int) -> List[int]:
    """
    All primes p <= limit, ascending.

    Raises:
        MemoryBudgetError: limit is above config.MAX_PRIME_LIST_LIMIT
    """
    if limit < 2:
        return []
    if limit > config.MAX_PRIME_LIST_LIMIT:
        raise MemoryBudgetError(
            f"prime list up to {limit} exceeds the budget of {config.MAX_PRIME_LIST_LIMIT}"
        )
    return _prime_array(limit).tolist()


@lru_cache(maxsize=1)
def _small_primes() -> Tuple[int, ...]:
    return tuple(primes_up_to(config.SMALL_PRIME_CUTOFF))


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (Brent's rho)."""
    root = math.isqrt(n)
    if root * root == n:
        return root

    # Fixed polynomial constants keep factorization deterministic.
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(_RHO_BATCH, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += _RHO_BATCH
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ApDivError(f"rho failed to split {n}")


def _split(m: int) -> List[int]:
    if is_prime(m):
        return [m]
    d = _pollard_brent(m)
    return _split(d) + _split(m // d)


def factorize(n: int) -> Factorization:
    """
    Factor n by trial division over the small primes, then Brent's rho for
    the remaining cofactor.

    Args:
        n: Number to factor (1 <= n < 2**64)

    Returns:
        Factorization: The unique ordered factorization; empty for n = 1

    Raises:
        InvalidInputError: n is 0 or outside 64 bits
    """
    _check_uint64(n)
    if n == 0:
        raise InvalidInputError("factorize() is undefined for 0")

    factors: List[Tuple[int, int]] = []
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    else:
        # Cofactor still has no factor below the cutoff and may be composite.
        if m > 1:
            counts = Counter(_split(m))
            factors.extend(sorted(counts.items()))
            return Factorization(n, tuple(factors))

    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def divisors(f: Factorization) -> List[int]:
    """All tau(n) divisors of n, ascending, from 1 to n."""
    divs = [1]
    for p, e in f.factors:
        powers = [p ** i for i in range(1, e + 1)]
        divs = divs + [d * pk for pk in powers for d in divs]
    divs.sort()
    return divs


def tau(f: Factorization) -> int:
    """Divisor count (a_1+1)(a_2+1)...(a_m+1)."""
    return math.prod(e + 1 for _, e in f.factors)


def isqrt(n: int) -> Tuple[int, bool]:
    """
    Exact integer square root.

    Returns:
        Tuple[int, bool]: (floor(sqrt(n)), whether n is a perfect square)
    """
    if n < 0:
        raise InvalidInputError(f"isqrt() needs n >= 0, got {n}")
    root = math.isqrt(n)
    return root, root * root == n


class SpfTable:
    """
    Smallest-prime-factor table for the segment [lo, hi].

    Alongside the spf column the table keeps, for every n in the segment,
    its distinct primes p with p*p <= n and p*p <= hi in a flat array
    (offsets/data layout). What remains after dividing those out is 1 or a
    single prime, so any factorization in the segment is rebuilt from
    lookups alone.
    """

    def __init__(self, lo: int, hi: int, offsets: np.ndarray, data: np.ndarray):
        self.lo = lo
        self.hi = hi
        self._offsets = offsets
        self._data = data
        self._offsets.flags.writeable = False
        self._data.flags.writeable = False

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def _index(self, n: int) -> int:
        if n not in self:
            raise InvalidInputError(f"{n} is outside the segment [{self.lo}, {self.hi}]")
        return n - self.lo

    def __getitem__(self, n: int) -> int:
        """Smallest prime factor of n (1 for n = 1)."""
        i = self._index(n)
        start, end = self._offsets[i], self._offsets[i + 1]
        return int(self._data[start]) if end > start else n

    def factorize(self, n: int) -> Factorization:
        i = self._index(n)
        listed = self._data[self._offsets[i]:self._offsets[i + 1]].tolist()
        return _rebuild(n, listed)

    def factorizations(self) -> Iterator[Factorization]:
        """Factorizations of lo, lo+1, ..., hi in order."""
        chunk = config.FACTORIZATION_CHUNK
        for start in range(0, len(self), chunk):
            end = min(start + chunk, len(self))
            offsets = self._offsets[start:end + 1].tolist()
            data = self._data[offsets[0]:offsets[-1]].tolist()
            base = offsets[0]
            for i, n in enumerate(range(self.lo + start, self.lo + end)):
                yield _rebuild(n, data[offsets[i] - base:offsets[i + 1] - base])


def _rebuild(n: int, listed: List[int]) -> Factorization:
    m = n
    factors = []
    for p in listed:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        factors.append((p, e))
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def spf_sieve(
    lo: int,
    hi: int,
    max_segment: Optional[int] = None,
    max_bytes: Optional[int] = None,
) -> SpfTable:
    """
    Sieve the smallest prime factor of every n in [lo, hi].

    Args:
        lo: First number of the segment (>= 1)
        hi: Last number of the segment (>= lo)
        max_segment: Largest segment in numbers (config.MAX_SEGMENT_SIZE if None)
        max_bytes: Byte budget for the sieve arrays (config.SIEVE_MEMORY_BUDGET if None)

    Returns:
        SpfTable: Lookup table for the segment

    Raises:
        InvalidInputError: Empty or non-positive segment
        MemoryBudgetError: Segment, sieve arrays or base sieve above the budget
    """
    if lo < 1 or hi < lo:
        raise InvalidInputError(f"invalid sieve segment [{lo}, {hi}]")
    _check_uint64(hi)
    length = hi - lo + 1
    budget = config.MAX_SEGMENT_SIZE if max_segment is None else max_segment
    if length > budget or length * _MAX_DISTINCT_PRIMES >= 1 << 31:
        raise MemoryBudgetError(f"segment of {length} numbers exceeds the budget of {budget}")
    byte_budget = config.SIEVE_MEMORY_BUDGET if max_bytes is None else max_bytes
    planned = length * config.SIEVE_BYTES_PER_NUMBER
    if planned > byte_budget:
        raise MemoryBudgetError(
            f"segment of {length} numbers needs about {planned} bytes, budget is {byte_budget}"
        )
    root = math.isqrt(hi)
    if root > config.MAX_BASE_SIEVE_LIMIT:
        raise MemoryBudgetError(
            f"base sieve up to {root} exceeds the budget of {config.MAX_BASE_SIEVE_LIMIT}"
        )

    started = time.perf_counter()
    base = _prime_array(root).tolist() if root >= 2 else []

    # (prime, index of its first multiple >= max(p*p, lo)) for every base prime
    starts = []
    for p in base:
        first = max(p * p, -(-lo // p) * p)
        if first <= hi:
            starts.append((p, first - lo))

    counts = np.zeros(length, dtype=np.uint8)
    for p, start in starts:
        counts[start::p] += 1

    offsets = np.zeros(length + 1, dtype=np.int32)
    np.cumsum(counts, dtype=np.int32, out=offsets[1:])
    del counts

    # offsets, the fill cursor and the prime list are alive together
    needed = offsets.nbytes + 4 * length + 4 * int(offsets[-1])
    if needed > byte_budget:
        raise MemoryBudgetError(f"sieve arrays for [{lo}, {hi}] need {needed} bytes, budget is {byte_budget}")

    data = np.empty(int(offsets[-1]), dtype=np.uint32)
    fill = offsets[:-1].copy()
    for p, start in starts:
        slots = fill[start::p]
        data[slots] = p
        fill[start::p] += 1
    del fill

    logger.debug(
        "Sieved [%d, %d]: %d base primes in %.3fs",
        lo, hi, len(starts), time.perf_counter() - started,
    )
    return SpfTable(lo, hi, offsets, data)
