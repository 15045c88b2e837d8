"""Exact integer helpers and the trial-division oracle.

Python ints are arbitrary precision, so nothing here can overflow. The
divisor routines deliberately use plain trial division: they serve as the
reference everything else is tested against, and the values involved stay
well below 10**12.
"""

from __future__ import annotations

import math

from .polynomial import Polynomial


def trial_divisors(v: int) -> list[int]:
    """All positive divisors of |v| in ascending order."""
    if v == 0:
        raise ValueError("zero has no finite divisor list")
    v = abs(v)
    small, large = [], []
    for d in range(1, math.isqrt(v) + 1):
        if v % d == 0:
            small.append(d)
            if d * d != v:
                large.append(v // d)
    return small + large[::-1]


def factor_pairs(v: int, nontrivial: bool = True) -> list[tuple[int, int]]:
    """Unordered pairs (p, q), p <= q, with p*q = |v|."""
    v = abs(v)
    pairs = [(d, v // d) for d in trial_divisors(v) if d * d <= v]
    if nontrivial:
        pairs = [pq for pq in pairs if pq[0] != 1]
    return pairs


def prime_factors(v: int) -> list[int]:
    """Prime factors of |v| with multiplicity, ascending."""
    if v == 0:
        raise ValueError("zero has no prime factorization")
    v = abs(v)
    out = []
    d = 2
    while d * d <= v:
        while v % d == 0:
            out.append(d)
            v //= d
        d += 1
    if v > 1:
        out.append(v)
    return out


def gcd(x: int, y: int) -> int:
    # math.gcd is already sign-insensitive with gcd(0, 0) == 0
    return math.gcd(x, y)


def isqrt(v: int) -> int:
    if v < 0:
        raise ValueError("isqrt of a negative integer")
    return math.isqrt(v)


def is_square(v: int) -> bool:
    return v >= 0 and math.isqrt(v) ** 2 == v


def hasse_derivative(F: Polynomial, j: int) -> Polynomial:
    return F.hasse(j)
