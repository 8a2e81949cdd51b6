"""Integer helpers: primality, factoring of group orders, primitive roots."""

from __future__ import annotations

from functools import lru_cache

import sympy

# Deterministic for n < 3.3e24 (Sorenson & Webster), which covers every p < 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=256)
def group_order_factors(p: int, m: int) -> tuple[int, ...]:
    """Distinct prime factors of p**m - 1, ascending.

    p**m - 1 is split as (p - 1) * (p**m - 1) / (p - 1) before factoring,
    which keeps both halves small enough for sympy's rho/p-1 methods at q ~ 1e8.
    """
    n = p**m - 1
    if n <= 1:
        return ()
    primes = set(sympy.factorint(p - 1)) if p > 2 else set()
    rest = n // (p - 1)
    if rest > 1:
        primes |= set(sympy.factorint(rest))
    return tuple(sorted(primes))


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = group_order_factors(p, 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise AssertionError(f"no primitive root mod {p}")


def is_primitive_root(g: int, p: int) -> bool:
    g %= p
    if g == 0:
        return False
    return all(pow(g, (p - 1) // r, p) != 1 for r in group_order_factors(p, 1))


def nearest_prime(n: int) -> int:
    """Prime closest to ``n``; ties resolve to the smaller prime."""
    if n <= 2:
        return 2
    if is_prime(n):
        return n
    for off in range(1, n):
        if is_prime(n - off):
            return n - off
        if is_prime(n + off):
            return n + off
    raise AssertionError("unreachable")
