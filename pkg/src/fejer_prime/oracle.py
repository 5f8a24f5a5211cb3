"""Brute-force arithmetic ground truth.

Everything here is integer-only and deliberately naive. The analytic code
never imports from this module except where an exact divisor list is the
intended evaluation path (integer closed forms).
"""

from __future__ import annotations

import math

SIEVE_LIMIT = 10**7


def _check_natural(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    if n >= 1 << 64:
        raise ValueError("n must fit in 64 bits")
    return n


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    _check_natural(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def tau(n: int) -> int:
    return len(divisors(n))


def sigma(n: int) -> int:
    return sum(divisors(n))


def is_prime(n: int) -> bool:
    """Trial division up to isqrt(n)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_sieve(limit: int) -> bytearray:
    """Eratosthenes flags: ``flags[k] == 1`` iff k is prime, for 0 <= k <= limit."""
    if limit < 0:
        return bytearray()
    flags = bytearray([1]) * (limit + 1)
    for k in range(min(2, limit + 1)):
        flags[k] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return flags


def primes_up_to(limit: int) -> list[int]:
    flags = prime_sieve(limit)
    return [k for k in range(len(flags)) if flags[k]]


def prime_pi(x: float) -> int:
    """Number of primes <= floor(x)."""
    if x < 2:
        return 0
    n = math.floor(x)
    if n <= SIEVE_LIMIT:
        return sum(prime_sieve(n))
    return sum(prime_sieve(SIEVE_LIMIT)) + sum(
        1 for k in range(SIEVE_LIMIT + 1, n + 1) if is_prime(k)
    )
