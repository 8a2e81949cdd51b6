"""Arithmetic in GF(p) and GF(p^m) over the polynomial basis.

Elements are stored as little-endian coefficient tuples (constant term
first), always of length ``m``.  :class:`FieldSpec` carries tuple-level
arithmetic for hot loops; :class:`FieldElement` wraps a tuple with its field
and the usual operators.

Elements are indexed in discrete-log order: index 0 is zero and index
``i >= 1`` is ``alpha**(i - 1)`` for the field's primitive element alpha.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import conway
from ._numtheory import group_order_factors, is_prime, smallest_primitive_root
from .errors import (
    DegreeTooLarge,
    DivisionByZero,
    FieldTooLargeForDiscreteLog,
    IndexOutOfRange,
    NotPrime,
)

Coeffs = tuple[int, ...]

PRIME_LIMIT = 2**63
EXTENSION_LIMIT = 2**127
DISCRETE_LOG_LIMIT = 2**48
IRREDUCIBILITY_CHECK_MAX_DEGREE = 8


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with an explicit modulus and primitive element.

    ``modulus`` holds the m+1 little-endian coefficients of the monic defining
    polynomial (empty for prime fields).  Construction verifies primality of
    p, irreducibility of the modulus (m <= 8) and the exact order of the
    primitive element; pass ``check=False`` only for values already verified.
    """

    p: int
    m: int
    modulus: Coeffs
    primitive: Coeffs
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        object.__setattr__(self, "primitive", tuple(int(c) for c in self.primitive))
        # x^m == -(c_0 + ... + c_{m-1} x^{m-1}); stored negated for the reduction loop
        neg = tuple((-c) % self.p for c in self.modulus[:-1]) if self.m > 1 else ()
        object.__setattr__(self, "_neg_modulus", neg)
        if self.check:
            self._validate()

    def _validate(self) -> None:
        p, m = self.p, self.m
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if m < 1:
            raise DegreeTooLarge(f"extension degree must be >= 1, got {m}")
        if m == 1:
            if self.modulus:
                raise ValueError("prime fields take an empty modulus")
        else:
            if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if any(not 0 <= c < p for c in self.modulus):
                raise ValueError("modulus coefficients must lie in [0, p)")
            if m <= IRREDUCIBILITY_CHECK_MAX_DEGREE and not conway.is_irreducible(self.modulus, p):
                raise ValueError(f"modulus {self.modulus} is reducible over GF({p})")
        if len(self.primitive) != m or any(not 0 <= c < p for c in self.primitive):
            raise ValueError("primitive element has the wrong shape")
        n = self.order - 1
        if self.pow(self.primitive, n) != self.one or any(
            self.pow(self.primitive, n // r) == self.one for r in group_order_factors(p, m)
        ):
            raise ValueError(f"{self.primitive} does not generate GF({p}^{m})*")

    # -- basic facts -------------------------------------------------------

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def zero(self) -> Coeffs:
        return (0,) * self.m

    @property
    def one(self) -> Coeffs:
        return (1,) + (0,) * (self.m - 1)

    def __str__(self) -> str:
        return f"GF({self.p})" if self.m == 1 else f"GF({self.p}^{self.m})"

    def element(self, coeffs: Iterable[int]) -> FieldElement:
        c = tuple(int(x) % self.p for x in coeffs)
        if len(c) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(c)}")
        return FieldElement(self, c)

    @property
    def alpha(self) -> FieldElement:
        return FieldElement(self, self.primitive)

    def contains(self, c: Sequence[int]) -> bool:
        return len(c) == self.m and all(0 <= x < self.p for x in c)

    # -- tuple arithmetic --------------------------------------------------

    def add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Coeffs) -> Coeffs:
        p = self.p
        return tuple((-x) % p for x in a)

    def scale(self, a: Coeffs, s: int) -> Coeffs:
        p = self.p
        return tuple(x * s % p for x in a)

    def mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p, m = self.p, self.m
        if m == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return self.reduce(prod)

    def reduce(self, prod: list[int]) -> Coeffs:
        """Reduce a coefficient list of length <= 2m-1 modulo the defining polynomial."""
        p, m = self.p, self.m
        neg = self._neg_modulus
        for d in range(len(prod) - 1, m - 1, -1):
            c = prod[d] % p
            if c:
                base = d - m
                for i in range(m):
                    prod[base + i] += c * neg[i]
        out = [c % p for c in prod[:m]]
        out.extend([0] * (m - len(out)))
        return tuple(out)

    def pow(self, a: Coeffs, e: int) -> Coeffs:
        """Square-and-multiply; ``pow(a, 0)`` is one for every a, zero included."""
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return (pow(a[0], e, self.p),)
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a: Coeffs) -> Coeffs:
        if not any(a):
            raise DivisionByZero(f"zero has no inverse in {self}")
        if self.m == 1:
            return (pow(a[0], -1, self.p),)
        return self.pow(a, self.order - 2)

    # -- indexing ----------------------------------------------------------

    def from_index(self, i: int) -> Coeffs:
        if not 0 <= i < self.order:
            raise IndexOutOfRange(f"index {i} outside [0, {self.order})")
        if i == 0:
            return self.zero
        return self.pow(self.primitive, i - 1)

    def to_index(self, a: Coeffs) -> int:
        if not any(a):
            return 0
        return discrete_log(self, a) + 1

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "primitive": list(self.primitive)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> FieldSpec:
        return cls(int(d["p"]), int(d["m"]), tuple(d["modulus"]), tuple(d["primitive"]))

    @classmethod
    def from_json(cls, s: str) -> FieldSpec:
        return cls.from_dict(json.loads(s))


class FieldElement:
    """An element of a :class:`FieldSpec`, with operator overloads."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> Coeffs:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"elements of {self.field} and {other.field} do not mix")
            return other.coeffs
        if isinstance(other, int):
            return self.field.scale(self.field.one, other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return b if b is NotImplemented else FieldElement(self.field, self.field.add(self.coeffs, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return b if b is NotImplemented else FieldElement(self.field, self.field.sub(self.coeffs, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return b if b is NotImplemented else FieldElement(self.field, self.field.sub(b, self.coeffs))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.coeffs))

    def __mul__(self, other):
        b = self._coerce(other)
        return b if b is NotImplemented else FieldElement(self.field, self.field.mul(self.coeffs, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.coeffs, self.field.inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.coeffs, int(e)))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def index(self) -> int:
        return self.field.to_index(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.field.scale(self.field.one, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.coeffs))

    def __int__(self):
        if self.field.m != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.coeffs[0]

    def __repr__(self):
        return f"FieldElement({format_element(self)} in {self.field})"

    def __str__(self):
        return format_element(self)


# -- constructors -----------------------------------------------------------


def make_prime_field(p: int) -> FieldSpec:
    """GF(p) with its smallest primitive root as primitive element."""
    if p < 2 or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p >= PRIME_LIMIT:
        raise DegreeTooLarge(f"prime fields are limited to p < 2**63, got {p}")
    return FieldSpec(p, 1, (), (smallest_primitive_root(p),), check=False)


def make_extension_field(p: int, m: int) -> FieldSpec:
    """GF(p^m) defined by the package's documented modulus; alpha = x.

    The modulus is the Conway polynomial when (p, m) is tabulated, otherwise
    the first primitive polynomial in lexicographic order (see
    :mod:`idcodes.conway`).
    """
    if p < 2 or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 2:
        raise DegreeTooLarge(f"extension fields need m >= 2, got {m}; use make_prime_field")
    if p**m >= EXTENSION_LIMIT:
        raise DegreeTooLarge(f"{p}^{m} exceeds the 2**127 budget")
    modulus = conway.default_modulus(p, m)
    alpha = (0, 1) + (0,) * (m - 2)
    # default_modulus only returns polynomials verified primitive and irreducible
    return FieldSpec(p, m, modulus, alpha, check=False)


def make_field(p: int, m: int = 1) -> FieldSpec:
    return make_prime_field(p) if m == 1 else make_extension_field(p, m)


# -- module-level operations -------------------------------------------------


def element_from_index(spec: FieldSpec, i: int) -> FieldElement:
    return FieldElement(spec, spec.from_index(i))


def index_from_element(spec: FieldSpec, e: FieldElement | Sequence[int]) -> int:
    coeffs = e.coeffs if isinstance(e, FieldElement) else tuple(e)
    return spec.to_index(coeffs)


def expand_symbol(spec_ext: FieldSpec, e: FieldElement | Sequence[int]) -> tuple[int, ...]:
    """The m polynomial-basis coefficients of ``e``, constant term first."""
    coeffs = e.coeffs if isinstance(e, FieldElement) else tuple(e)
    if not spec_ext.contains(coeffs):
        raise ValueError(f"{coeffs} is not an element of {spec_ext}")
    return tuple(coeffs)


def discrete_log(spec: FieldSpec, a: Coeffs) -> int:
    """log_alpha(a) in [0, p^m - 1) by baby-step/giant-step.

    O(sqrt(p^m)) time and memory, so only offered for p^m <= 2**48.
    """
    if spec.order > DISCRETE_LOG_LIMIT:
        raise FieldTooLargeForDiscreteLog(f"{spec} is too large for baby-step/giant-step")
    if not any(a):
        raise ValueError("zero has no discrete logarithm")
    n = spec.order - 1
    s = math.isqrt(n - 1) + 1 if n > 1 else 1
    table: dict[Coeffs, int] = {}
    cur = spec.one
    for i in range(s):
        table.setdefault(cur, i)
        cur = spec.mul(cur, spec.primitive)
    giant = spec.inv(spec.pow(spec.primitive, s))
    cur = tuple(a)
    for j in range(s + 1):
        i = table.get(cur)
        if i is not None:
            return (j * s + i) % n
        cur = spec.mul(cur, giant)
    raise AssertionError(f"{a} not found in <alpha>; field invariant broken")


# -- text format --------------------------------------------------------------


def format_element(e: FieldElement | Sequence[int]) -> str:
    coeffs = e.coeffs if isinstance(e, FieldElement) else e
    return ",".join(str(c) for c in coeffs)


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    """Parse ``"c0,c1,...,c_{m-1}"`` or the power form ``"a^e"``.

    A bare integer is accepted for prime fields.
    """
    s = text.strip()
    if s.startswith(("a^", "alpha^")):
        return FieldElement(spec, spec.pow(spec.primitive, int(s.split("^", 1)[1])))
    parts = [x for x in s.split(",") if x.strip()]
    if len(parts) != spec.m:
        raise ValueError(f"{text!r}: expected {spec.m} comma-separated coefficients")
    return spec.element(int(x) for x in parts)
