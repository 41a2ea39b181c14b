"""Ground truth that shares nothing with the generators or the solver.

A plain Sieve of Eratosthenes, trial division, and direct divisibility tests.
Only :mod:`residue_classes` is imported from the package, to turn gamma into
a value. No wheel, no segmentation: this is the slow baseline on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Optional

import numpy as np

from .residue_classes import ResidueClass, value_of


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    membership: bytearray

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.limit and bool(self.membership[n])

    def primes(self) -> list[int]:
        return [n for n in range(self.limit + 1) if self.membership[n]]


def sieve(limit: int) -> PrimeTable:
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
    return PrimeTable(limit, flags)


def trial_division(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def gamma_primes(cls: ResidueClass, gamma_max: int, table: Optional[PrimeTable] = None) -> list[int]:
    if cls not in (ResidueClass.OMINUS, ResidueClass.OPLUS):
        raise ValueError("gamma_primes covers O- and O+ only")
    if gamma_max < 1:
        return []
    top = value_of(cls, gamma_max, bignum=True)
    if table is None or table.limit < top:
        table = sieve(max(top, 2))
    return [g for g in range(1, gamma_max + 1) if value_of(cls, g, bignum=True) in table]


def _family_member(f, gamma: int) -> bool:
    """Membership from the family's kind and parameter by divisibility alone."""
    kind = f.kind.value
    a = f.parameter
    if kind == "minus_alpha":
        return (6 * gamma - 1) % (6 * a + 1) != 0
    if kind == "minus_beta":
        return (6 * gamma - 1) % (6 * a - 1) != 0 or gamma == a
    if kind == "plus1_alpha":
        return (6 * gamma + 1) % (6 * a + 1) != 0 or gamma == a
    if kind == "plus2_alpha":
        return (6 * gamma + 1) % (6 * a - 1) != 0
    raise ValueError(f"unknown family kind {kind!r}")


def brute_force_intersection(families: Iterable, gamma_max: int) -> list[int]:
    families = list(families)
    if not families:
        raise ValueError("need at least one family")
    keep = set(range(1, gamma_max + 1))
    for f in families:
        keep &= {g for g in range(1, gamma_max + 1) if _family_member(f, g)}
    return sorted(keep)


def brute_force_solvable(p_i: int, p_j: int, offset: int, bound: int = 500) -> bool:
    """Search b_i, b_j in [-bound, bound] for p_i b_i - p_j b_j + offset = 0."""
    bj = np.arange(-bound, bound + 1, dtype=np.int64)
    num = p_j * bj - offset
    ok = num % p_i == 0
    bi = num[ok] // p_i
    return bool(np.any((bi >= -bound) & (bi <= bound)))


def small_primes(limit: int) -> list[int]:
    return sieve(max(limit, 2)).primes()


def is_prime(n: int, divisors: Optional[list[int]] = None) -> bool:
    """Trial division by a precomputed prime list (extended on demand)."""
    if n < 2:
        return False
    root = isqrt(n)
    if divisors is None or (divisors and divisors[-1] < root):
        divisors = small_primes(root)
    for p in divisors:
        if p > root:
            return True
        if n % p == 0:
            return n == p
    return True


def first_gamma_prime(cls: ResidueClass, lo: int, hi: int, divisors: Optional[list[int]] = None) -> Optional[int]:
    """Smallest gamma in [lo, hi] whose value in ``cls`` is prime, or None."""
    for g in range(lo, hi + 1):
        if is_prime(value_of(cls, g, bignum=True), divisors):
            return g
    return None
