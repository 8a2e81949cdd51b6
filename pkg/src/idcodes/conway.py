"""Choice of the defining polynomial for GF(p^m).

Polynomials are little-endian coefficient tuples over GF(p) *including* the
leading 1, so ``(2, 2, 1)`` is x^2 + 2x + 2.

Two rules, applied in order:

1. Conway polynomials, for every (p, m) in :data:`CONWAY_TABLE`.
2. Otherwise the first monic polynomial, enumerating ``(c_{m-1}, ..., c_0)``
   lexicographically, that is irreducible and has x as a primitive element.

The table was generated with :func:`conway_polynomial_search` and is frozen
here because codeword bytes depend on it.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from sympy import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from ._numtheory import group_order_factors, is_primitive_root, smallest_primitive_root
from .errors import SearchSpaceTooLarge

Poly = tuple[int, ...]


def _mulmod(a: list[int], b: list[int], f: Poly, p: int) -> list[int]:
    m = len(f) - 1
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for d in range(2 * m - 2, m - 1, -1):
        c = prod[d] % p
        if c:
            base = d - m
            for i in range(m):
                prod[base + i] -= c * f[i]
    return [c % p for c in prod[:m]]


def _powmod(a: list[int], e: int, f: Poly, p: int) -> list[int]:
    m = len(f) - 1
    result = [1] + [0] * (m - 1)
    while e:
        if e & 1:
            result = _mulmod(result, a, f, p)
        e >>= 1
        if e:
            a = _mulmod(a, a, f, p)
    return result


def _x(m: int) -> list[int]:
    return [0, 1] + [0] * (m - 2)


def _heads(p: int, length: int) -> Iterator[tuple[int, ...]]:
    """All length-tuples over range(p) in lexicographic order, generated lazily."""
    for t in range(p**length):
        digits = []
        for _ in range(length):
            t, d = divmod(t, p)
            digits.append(d)
        yield tuple(reversed(digits))


def is_irreducible(f: Poly, p: int) -> bool:
    return bool(gf_irreducible_p([c % p for c in reversed(f)], p, ZZ))


def x_is_primitive(f: Poly, p: int) -> bool:
    """True when x has multiplicative order exactly p^m - 1 modulo f."""
    m = len(f) - 1
    if m == 1:
        return is_primitive_root(-f[0], p)
    n = p**m - 1
    one = [1] + [0] * (m - 1)
    x = _x(m)
    if _powmod(x, n, f, p) != one:
        return False
    return all(_powmod(x, n // r, f, p) != one for r in group_order_factors(p, m))


def is_primitive_polynomial(f: Poly, p: int) -> bool:
    return is_irreducible(f, p) and x_is_primitive(f, p)


def _eval_at(g: Poly, y: list[int], f: Poly, p: int) -> list[int]:
    """g(y) reduced modulo f, by Horner."""
    m = len(f) - 1
    acc = [0] * m
    for c in reversed(g):
        acc = _mulmod(acc, y, f, p)
        acc[0] = (acc[0] + c) % p
    return acc


@lru_cache(maxsize=None)
def conway_polynomial_search(p: int, m: int, max_candidates: int = 2_000_000) -> Poly:
    """Conway polynomial C_{p,m} computed from its definition.

    Candidates x^m - a1 x^(m-1) + a2 x^(m-2) - ... are ordered by
    (a1, ..., am) lexicographically; the first that is primitive and
    compatible with C_{p,d} for every proper divisor d of m wins.
    """
    g = smallest_primitive_root(p)
    if m == 1:
        return ((-g) % p, 1)
    if p ** (m - 1) > max_candidates:
        raise SearchSpaceTooLarge(f"Conway search for ({p},{m}) exceeds {max_candidates} candidates")
    n = p**m - 1
    divisors = [d for d in range(1, m) if m % d == 0]
    sub = {d: conway_polynomial_search(p, d) for d in divisors}
    sign = [1 if i % 2 == 0 else p - 1 for i in range(m + 1)]
    for head in _heads(p, m - 1):
        a = (*head, g)  # the norm condition fixes a_m to the primitive root
        f = tuple((sign[i] * a[i - 1]) % p for i in range(m, 0, -1)) + (1,)
        if not x_is_primitive(f, p):
            continue
        ok = True
        for d, cd in sub.items():
            y = _powmod(_x(m), n // (p**d - 1), f, p)
            if any(_eval_at(cd, y, f, p)):
                ok = False
                break
        if ok and is_irreducible(f, p):
            return f
    raise AssertionError(f"no Conway polynomial found for ({p},{m})")


def smallest_primitive_polynomial(p: int, m: int) -> Poly:
    """First monic degree-m polynomial, ordered by (c_{m-1}, ..., c_0), with x primitive."""
    # x^m + c0 is never primitive for m >= 2: x^(m(p-1)) = 1, so those candidates are skipped.
    for head in _heads(p, m - 1):
        if not any(head):
            continue
        low = list(reversed(head))  # (c_1, ..., c_{m-1})
        for c0 in range(1, p):
            # the norm of x is (-1)^m c0 and must itself generate GF(p)*
            if not is_primitive_root(c0 if m % 2 == 0 else -c0, p):
                continue
            f = (c0, *low, 1)
            if x_is_primitive(f, p) and is_irreducible(f, p):
                return f
    raise AssertionError(f"no primitive polynomial found for ({p},{m})")


def default_modulus(p: int, m: int) -> Poly:
    f = CONWAY_TABLE.get((p, m))
    if f is not None:
        return f
    return smallest_primitive_polynomial(p, m)


# Generated by conway_polynomial_search.  Coverage: p < 100 with m in {2, 3};
# p <= 23 with m = 4; p <= 7 with m in {5, 6}; p = 2 with m <= 8.
CONWAY_TABLE: dict[tuple[int, int], Poly] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (5, 5): (3, 4, 0, 0, 0, 1),
    (5, 6): (2, 0, 1, 4, 1, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
    (7, 5): (4, 1, 0, 0, 0, 1),
    (7, 6): (3, 6, 4, 5, 1, 0, 1),
    (11, 2): (2, 7, 1),
    (11, 3): (9, 2, 0, 1),
    (11, 4): (2, 10, 8, 0, 1),
    (13, 2): (2, 12, 1),
    (13, 3): (11, 2, 0, 1),
    (13, 4): (2, 12, 3, 0, 1),
    (17, 2): (3, 16, 1),
    (17, 3): (14, 1, 0, 1),
    (17, 4): (3, 10, 7, 0, 1),
    (19, 2): (2, 18, 1),
    (19, 3): (17, 4, 0, 1),
    (19, 4): (2, 11, 2, 0, 1),
    (23, 2): (5, 21, 1),
    (23, 3): (18, 2, 0, 1),
    (23, 4): (5, 19, 3, 0, 1),
    (29, 2): (2, 24, 1),
    (29, 3): (27, 2, 0, 1),
    (31, 2): (3, 29, 1),
    (31, 3): (28, 1, 0, 1),
    (37, 2): (2, 33, 1),
    (37, 3): (35, 6, 0, 1),
    (41, 2): (6, 38, 1),
    (41, 3): (35, 1, 0, 1),
    (43, 2): (3, 42, 1),
    (43, 3): (40, 1, 0, 1),
    (47, 2): (5, 45, 1),
    (47, 3): (42, 3, 0, 1),
    (53, 2): (2, 49, 1),
    (53, 3): (51, 3, 0, 1),
    (59, 2): (2, 58, 1),
    (59, 3): (57, 5, 0, 1),
    (61, 2): (2, 60, 1),
    (61, 3): (59, 7, 0, 1),
    (67, 2): (2, 63, 1),
    (67, 3): (65, 6, 0, 1),
    (71, 2): (7, 69, 1),
    (71, 3): (64, 4, 0, 1),
    (73, 2): (5, 70, 1),
    (73, 3): (68, 2, 0, 1),
    (79, 2): (3, 78, 1),
    (79, 3): (76, 9, 0, 1),
    (83, 2): (2, 82, 1),
    (83, 3): (81, 3, 0, 1),
    (89, 2): (3, 82, 1),
    (89, 3): (86, 3, 0, 1),
    (97, 2): (5, 96, 1),
    (97, 3): (92, 9, 0, 1),
}
