"""Reed-Solomon codes used as tagging functions.

A message (m_0, ..., m_{k-1}) is the polynomial sum(m_i x^i); codeword
position j is that polynomial evaluated at the j-th locator, the element of
index j in discrete-log order (0, alpha^0, alpha^1, ...).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import IndexOutOfRange, MaterializationTooLarge, SearchSpaceTooLarge
from .field import Coeffs, FieldElement, FieldSpec

MATERIALIZATION_CAP = 10**6
SEARCH_CAP = 10**6

Symbol = Union[FieldElement, Sequence[int]]
Message = Sequence[Symbol]


@dataclass(frozen=True)
class RsParams:
    """(n, k) Reed-Solomon code over ``field``, using the first n locators."""

    field: FieldSpec
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n <= self.field.order:
            raise ValueError(f"need 1 <= k <= n <= |F|, got k={self.k}, n={self.n}, |F|={self.field.order}")

    @property
    def distance(self) -> int:
        return self.n - self.k + 1

    def locator(self, j: int) -> FieldElement:
        if not 0 <= j < self.n:
            raise IndexOutOfRange(f"locator index {j} outside [0, {self.n})")
        return FieldElement(self.field, self.field.from_index(j))


def _coeffs(params: RsParams, msg: Message) -> list[Coeffs]:
    if len(msg) != params.k:
        raise ValueError(f"message has {len(msg)} symbols, code expects {params.k}")
    out = []
    for s in msg:
        c = s.coeffs if isinstance(s, FieldElement) else tuple(int(x) for x in s)
        if not params.field.contains(c):
            raise ValueError(f"{c} is not an element of {params.field}")
        out.append(c)
    return out


def horner(field: FieldSpec, coeffs: Sequence[Coeffs], x: Coeffs) -> Coeffs:
    """sum(coeffs[i] * x**i) with 0**0 == 1."""
    if not any(x):
        return tuple(coeffs[0]) if coeffs else field.zero
    acc = field.zero
    mul, add = field.mul, field.add
    for c in reversed(coeffs):
        acc = add(mul(acc, x), c)
    return acc


def evaluate_tag(params: RsParams, msg: Message, locator_index: int) -> FieldElement:
    if not 0 <= locator_index < params.n:
        raise IndexOutOfRange(f"locator index {locator_index} outside [0, {params.n})")
    x = params.field.from_index(locator_index)
    return FieldElement(params.field, horner(params.field, _coeffs(params, msg), x))


def codeword(params: RsParams, msg: Message, cap: int = MATERIALIZATION_CAP) -> list[FieldElement]:
    if params.n > cap:
        raise MaterializationTooLarge(f"codeword of length {params.n} exceeds cap {cap}")
    f = params.field
    coeffs = _coeffs(params, msg)
    out = [FieldElement(f, horner(f, coeffs, f.zero))]
    x = f.one
    for _ in range(1, params.n):
        out.append(FieldElement(f, horner(f, coeffs, x)))
        x = f.mul(x, f.primitive)
    return out


def generator_matrix(params: RsParams, cap: int = MATERIALIZATION_CAP) -> list[list[FieldElement]]:
    """k x n matrix with entry (i, j) = locator_j ** i."""
    if params.k * params.n > cap:
        raise MaterializationTooLarge(f"{params.k}x{params.n} generator matrix exceeds cap {cap}")
    f = params.field
    locs = [f.from_index(j) for j in range(params.n)]
    return [[FieldElement(f, f.pow(x, i)) for x in locs] for i in range(params.k)]


def encode_with_matrix(msg: Message, matrix: Sequence[Sequence[FieldElement]]) -> list[FieldElement]:
    """Row vector times matrix, the slow route used as a cross-check."""
    f = matrix[0][0].field
    rows = [s.coeffs if isinstance(s, FieldElement) else tuple(s) for s in msg]
    if len(rows) != len(matrix):
        raise ValueError("message length does not match the number of matrix rows")
    out = []
    for j in range(len(matrix[0])):
        acc = f.zero
        for i, c in enumerate(rows):
            acc = f.add(acc, f.mul(c, matrix[i][j].coeffs))
        out.append(FieldElement(f, acc))
    return out


def min_distance_bruteforce(params: RsParams, cap: int = SEARCH_CAP) -> int:
    """Exact minimum distance as the minimum weight over nonzero messages."""
    f = params.field
    if f.order**params.k > cap:
        raise SearchSpaceTooLarge(f"{f.order}^{params.k} messages exceed cap {cap}")
    locs = [f.from_index(j) for j in range(params.n)]
    elems = [f.from_index(i) for i in range(f.order)]
    best = params.n
    for msg in itertools.product(elems, repeat=params.k):
        if not any(any(c) for c in msg):
            continue
        w = sum(1 for x in locs if any(horner(f, msg, x)))
        best = min(best, w)
    return best
