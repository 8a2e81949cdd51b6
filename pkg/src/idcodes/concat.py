"""The (q, k, delta) concatenated Reed-Solomon identification code.

Inner code: (q, k) RS over GF(q).  Outer code: (q^k, q^(k-delta)) RS over
GF(q^k).  An identity is an outer message of q^(k-delta) symbols of GF(q^k);
its tagging function maps a randomness j in [0, q^(k+1)) to one symbol of
GF(q) and is evaluated on demand by :func:`tag` without building any matrix.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    AlphabetMismatch,
    IndexOutOfRange,
    IntegerTooLarge,
    InvalidScaling,
    MaterializationTooLarge,
    NotPrime,
    ValueOutOfRange,
)
from ._numtheory import is_prime
from .field import Coeffs, FieldElement, FieldSpec, expand_symbol, make_extension_field, make_prime_field
from .rs import MATERIALIZATION_CAP, RsParams, encode_with_matrix, generator_matrix, horner

#: Identity coefficients are produced and consumed in blocks of this many symbols.
BLOCK = 1 << 12
#: identity_from_integer refuses identities with more outer symbols than this.
INTEGER_DIGIT_CAP = 4096
#: Outer messages at most this long are evaluated by scalar Horner under backend="auto".
HORNER_MAX_LENGTH = 64


@dataclass(frozen=True)
class ConcatParams:
    q: int
    k: int
    delta: int
    inner_field: FieldSpec
    outer_field: FieldSpec

    @property
    def inner(self) -> RsParams:
        return RsParams(self.inner_field, self.q, self.k)

    @property
    def outer(self) -> RsParams:
        return RsParams(self.outer_field, self.q**self.k, self.outer_length)

    @property
    def outer_length(self) -> int:
        """Number of GF(q^k) symbols in an identity, q^(k-delta)."""
        return self.q ** (self.k - self.delta)

    @property
    def n_c(self) -> int:
        return self.q ** (self.k + 1)

    @property
    def k_c(self) -> int:
        return self.k * self.outer_length

    @property
    def d_c(self) -> int:
        return (self.q - self.k + 1) * (self.q**self.k - self.outer_length + 1)

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.n_c, self.k_c, self.d_c

    @property
    def identities(self) -> tuple[int, int]:
        """Number of identities as (base, exponent): q ** (k * q^(k-delta))."""
        return self.q, self.k_c

    @property
    def log10_identities(self) -> float:
        return self.k_c * math.log10(self.q)

    @property
    def label(self) -> str:
        return f"({self.q},{self.k},{self.delta})"


def derive_params_uncached(q: int, k: int, delta: int) -> ConcatParams:
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if not q > k > delta > 0:
        raise InvalidScaling(f"need q > k > delta > 0, got q={q}, k={k}, delta={delta}")
    if k / q > 0.5:
        warnings.warn(f"({q},{k},{delta}): q is not much larger than k", stacklevel=3)
    return ConcatParams(q, k, delta, make_prime_field(q), make_extension_field(q, k))


@lru_cache(maxsize=64)
def derive_params(q: int, k: int, delta: int) -> ConcatParams:
    return derive_params_uncached(q, k, delta)


# -- identities ---------------------------------------------------------------


def _seed_block(seed: int, b: int, length: int, q: int, k: int) -> np.ndarray:
    ss = np.random.SeedSequence(seed & 0xFFFFFFFFFFFFFFFF, spawn_key=(b,))
    return np.random.Generator(np.random.PCG64(ss)).integers(0, q, size=(length, k), dtype=np.int64)


class Identity:
    """Outer message of a concatenated code: q^(k-delta) symbols of GF(q^k).

    Coefficients are an int64 array of shape (q^(k-delta), k); row i is the
    little-endian expansion of m_i.  A seeded identity is generated block by
    block on demand, so very long identities never need to be held in memory.
    """

    __slots__ = ("params", "_coeffs", "seed")

    def __init__(self, params: ConcatParams, coeffs: np.ndarray | None = None, *, seed: int | None = None):
        if (coeffs is None) == (seed is None):
            raise ValueError("give exactly one of coeffs or seed")
        self.params = params
        self.seed = seed
        if coeffs is not None:
            coeffs = np.asarray(coeffs, dtype=np.int64)
            if coeffs.shape != (params.outer_length, params.k):
                raise ValueError(f"identity shape {coeffs.shape}, expected {(params.outer_length, params.k)}")
            if coeffs.size and (coeffs.min() < 0 or coeffs.max() >= params.q):
                raise ValueError("identity coefficients must lie in [0, q)")
            coeffs.setflags(write=False)
        self._coeffs = coeffs

    def blocks(self) -> Iterator[tuple[int, np.ndarray]]:
        """Yield (start, coefficient rows) in blocks of :data:`BLOCK` symbols."""
        n, q, k = self.params.outer_length, self.params.q, self.params.k
        for b, start in enumerate(range(0, n, BLOCK)):
            stop = min(start + BLOCK, n)
            if self._coeffs is not None:
                yield start, self._coeffs[start:stop]
            else:
                yield start, _seed_block(self.seed, b, stop - start, q, k)

    @property
    def coefficients(self) -> np.ndarray:
        if self._coeffs is None:
            arr = np.concatenate([blk for _, blk in self.blocks()])
            arr.setflags(write=False)
            return arr
        return self._coeffs

    def symbols(self) -> list[Coeffs]:
        return [tuple(row) for row in self.coefficients.tolist()]

    def elements(self) -> list[FieldElement]:
        f = self.params.outer_field
        return [FieldElement(f, c) for c in self.symbols()]

    def indices(self) -> list[int]:
        """Discrete-log index of every coefficient (desk-scale fields only)."""
        f = self.params.outer_field
        return [f.to_index(c) for c in self.symbols()]

    def is_zero(self) -> bool:
        return not any(blk.any() for _, blk in self.blocks())

    def __len__(self) -> int:
        return self.params.outer_length

    def __eq__(self, other):
        if not isinstance(other, Identity):
            return NotImplemented
        if self.params != other.params:
            return False
        if self.seed is not None and self.seed == other.seed:
            return True
        return all(np.array_equal(a, b) for (_, a), (_, b) in zip(self.blocks(), other.blocks()))

    def __hash__(self):
        return hash((self.params.q, self.params.k, self.params.delta, self.coefficients.tobytes()))

    def __repr__(self):
        src = f"seed={self.seed}" if self.seed is not None else f"{len(self)} symbols"
        return f"Identity({self.params.label}, {src})"


def identity_from_elements(params: ConcatParams, elements: Sequence[FieldElement | Sequence[int]]) -> Identity:
    rows = [e.coeffs if isinstance(e, FieldElement) else tuple(e) for e in elements]
    return Identity(params, np.array(rows, dtype=np.int64).reshape(len(rows), params.k))


def identity_from_indices(params: ConcatParams, indices: Sequence[int]) -> Identity:
    f = params.outer_field
    return identity_from_elements(params, [f.from_index(int(i)) for i in indices])


def identity_from_integer(params: ConcatParams, value: int) -> Identity:
    """Base-q^k digits of ``value``, most significant first, mapped through the index order."""
    n = params.outer_length
    if n > INTEGER_DIGIT_CAP:
        raise IntegerTooLarge(f"{params.label} identities have {n} digits; use identity_from_seed")
    base = params.q**params.k
    if not 0 <= value < base**n:
        raise ValueOutOfRange(f"identity {value} outside [0, {params.q}^{params.k_c})")
    digits = []
    for _ in range(n):
        value, d = divmod(value, base)
        digits.append(d)
    return identity_from_indices(params, digits[::-1])


def identity_to_integer(params: ConcatParams, identity: Identity) -> int:
    base = params.q**params.k
    value = 0
    for d in identity.indices():
        value = value * base + d
    return value


def identity_from_seed(params: ConcatParams, seed: int) -> Identity:
    """Deterministic, uniformly distributed identity.

    Block b (symbols b*BLOCK onward) is drawn from
    ``Generator(PCG64(SeedSequence(seed mod 2**64, spawn_key=(b,))))`` as
    ``integers(0, q, size=(block_len, k), dtype=int64)``, row-major: each row
    is one symbol's little-endian coefficients.
    """
    return Identity(params, seed=int(seed))


def random_identity(params: ConcatParams, rng: np.random.Generator) -> Identity:
    coeffs = rng.integers(0, params.q, size=(params.outer_length, params.k), dtype=np.int64)
    return Identity(params, coeffs)


def zero_identity(params: ConcatParams) -> Identity:
    return Identity(params, np.zeros((params.outer_length, params.k), dtype=np.int64))


# -- tag ------------------------------------------------------------------------


def _vector_safe(field: FieldSpec) -> bool:
    # every int64 accumulator stays below m * p^2 + p
    return 2 * field.m * field.p * field.p < 2**62


def _vec_mul_scalar(a: np.ndarray, b: Coeffs, field: FieldSpec) -> np.ndarray:
    """Row-wise product of an (L, m) array of elements with one element."""
    p, m = field.p, field.m
    prod = np.zeros((a.shape[0], 2 * m - 1), dtype=np.int64)
    for j, bj in enumerate(b):
        if bj:
            prod[:, j : j + m] += a * bj
    prod %= p
    neg = np.array(field._neg_modulus, dtype=np.int64)
    for d in range(2 * m - 2, m - 1, -1):
        c = prod[:, d] % p
        prod[:, d - m : d] += c[:, None] * neg[None, :]
    return prod[:, :m] % p


def _power_table(field: FieldSpec, beta: Coeffs, length: int) -> np.ndarray:
    """Rows beta^0 .. beta^(length-1), filled by doubling."""
    table = np.empty((length, field.m), dtype=np.int64)
    table[0] = field.one
    filled = 1
    step = beta
    while filled < length:
        n = min(filled, length - filled)
        table[filled : filled + n] = _vec_mul_scalar(table[:n], step, field)
        filled += n
        step = field.mul(step, step)
    return table


def _dot(field: FieldSpec, coeffs: np.ndarray, powers: np.ndarray) -> Coeffs:
    """sum over rows of coeffs[l] * powers[l] in the field."""
    p, m = field.p, field.m
    if len(coeffs) * p * p < 2**62:
        pair_sums = coeffs.T @ powers  # (m, m); exact, no overflow at this size
    else:
        pair_sums = ((coeffs[:, :, None] * powers[:, None, :]) % p).sum(axis=0)
    conv = [0] * (2 * m - 1)
    for i in range(m):
        for j in range(m):
            conv[i + j] += int(pair_sums[i, j])
    return field.reduce(conv)


def _outer_eval_vector(identity: Identity, beta: Coeffs) -> Coeffs:
    f = identity.params.outer_field
    powers = _power_table(f, beta, min(BLOCK, identity.params.outer_length))
    acc = f.zero
    shift = f.one
    beta_block = f.pow(beta, BLOCK)
    for _, blk in identity.blocks():
        part = _dot(f, blk, powers[: len(blk)])
        acc = f.add(acc, f.mul(part, shift))
        shift = f.mul(shift, beta_block)
    return acc


def _outer_eval_horner(identity: Identity, beta: Coeffs) -> Coeffs:
    f = identity.params.outer_field
    return horner(f, identity.symbols(), beta)


def outer_symbol(params: ConcatParams, identity: Identity, a: int, backend: str = "auto") -> Coeffs:
    """Outer codeword symbol at locator index ``a``, as GF(q^k) coefficients."""
    f = params.outer_field
    beta = f.from_index(a)
    if not any(beta):
        first = next(identity.blocks())[1][0]
        return tuple(int(c) for c in first)
    if backend == "auto":
        small = params.outer_length <= HORNER_MAX_LENGTH
        backend = "horner" if small or not _vector_safe(f) else "vector"
    if backend == "horner":
        return _outer_eval_horner(identity, beta)
    if backend == "vector":
        if not _vector_safe(f):
            raise ValueError(f"{f} is too wide for the int64 vector backend")
        return _outer_eval_vector(identity, beta)
    raise ValueError(f"unknown backend {backend!r}")


def tag(params: ConcatParams, identity: Identity, j: int, backend: str = "auto") -> FieldElement:
    """T_identity(j): one symbol of the concatenated codeword, computed on demand.

    ``j // q`` picks the outer locator, the outer polynomial is evaluated
    there, the resulting GF(q^k) symbol is expanded into k residues, and those
    are evaluated as an inner RS message at inner locator ``j % q``.
    """
    if not 0 <= j < params.n_c:
        raise IndexOutOfRange(f"randomness {j} outside [0, {params.n_c})")
    if identity.params != params:
        raise ValueError("identity belongs to different code parameters")
    a, r = divmod(j, params.q)
    sym = expand_symbol(params.outer_field, outer_symbol(params, identity, a, backend))
    inner = params.inner_field
    gamma = inner.from_index(r)
    return FieldElement(inner, horner(inner, [(c,) for c in sym], gamma))


def codeword_by_tags(params: ConcatParams, identity: Identity, cap: int = MATERIALIZATION_CAP) -> list[int]:
    """All n_c tags as residues, evaluating each outer symbol once."""
    if params.n_c > cap:
        raise MaterializationTooLarge(f"codeword of length {params.n_c} exceeds cap {cap}")
    inner = params.inner_field
    gammas = [inner.from_index(r) for r in range(params.q)]
    out = []
    for a in range(params.q**params.k):
        sym = [(c,) for c in outer_symbol(params, identity, a)]
        out.extend(horner(inner, sym, g)[0] for g in gammas)
    return out


def full_codeword_oracle(params: ConcatParams, identity: Identity, cap: int = MATERIALIZATION_CAP) -> list[FieldElement]:
    """The whole concatenated codeword computed with generator matrices.

    Outer message times G_o, symbol expansion to GF(q), then each k-residue
    block times G_i (the block-diagonal direct sum).  Test oracle only.
    """
    if params.n_c > cap:
        raise MaterializationTooLarge(f"codeword of length {params.n_c} exceeds cap {cap}")
    g_outer = generator_matrix(params.outer, cap=cap)
    g_inner = generator_matrix(params.inner, cap=cap)
    outer_cw = encode_with_matrix(identity.elements(), g_outer)
    expanded = [r for sym in outer_cw for r in expand_symbol(params.outer_field, sym)]
    k = params.k
    out: list[FieldElement] = []
    for start in range(0, len(expanded), k):
        block = [(r,) for r in expanded[start : start + k]]
        out.extend(encode_with_matrix(block, g_inner))
    return out


# -- bounds ---------------------------------------------------------------------


def lambda2_closed_form(q: int) -> Fraction:
    """Expanded false-identification bound of the (q, 3, 2) family."""
    q = Fraction(q)
    return 2 / q + 1 / q**2 - 3 / q**3 + 2 / q**4


def false_id_bound(params: ConcatParams) -> Fraction:
    """Maximum false-identification probability, 1 - d_c / n_c."""
    bound = 1 - Fraction(params.d_c, params.n_c)
    if params.k == 3 and params.delta == 2:
        assert bound == lambda2_closed_form(params.q), "closed form disagrees with 1 - d/n"
    return bound


def relative_distance_lower_bound(params: ConcatParams) -> Fraction:
    """1 - k/q - q^(-delta), which never exceeds d_c / n_c."""
    return 1 - Fraction(params.k, params.q) - Fraction(1, params.q**params.delta)


# -- identity file ----------------------------------------------------------------


def write_identity(path: str | Path, identity: Identity) -> None:
    """Header ``q k delta`` then one coefficient index per line, m_0 first."""
    p = identity.params
    lines = [f"{p.q} {p.k} {p.delta}"] + [str(i) for i in identity.indices()]
    Path(path).write_text("\n".join(lines) + "\n")


def read_identity(path: str | Path) -> Identity:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    q, k, delta = (int(x) for x in lines[0].split())
    params = derive_params(q, k, delta)
    indices = [int(x) for x in lines[1:]]
    if len(indices) != params.outer_length:
        raise ValueError(f"expected {params.outer_length} coefficient lines, found {len(indices)}")
    return identity_from_indices(params, indices)


# -- plain codebook concatenation ------------------------------------------------


def concatenate_codebooks(inner: Sequence, outer: Sequence, alphabet: Sequence | None = None) -> list:
    """Replace every outer symbol by its inner codeword.

    ``alphabet[i]`` is encoded as ``inner[i]``; by default the alphabet is the
    sorted set of symbols occurring in ``outer``.  String codebooks produce
    strings, other sequences produce tuples.
    """
    if alphabet is None:
        alphabet = sorted({s for word in outer for s in word})
    if len(alphabet) != len(inner):
        raise AlphabetMismatch(f"outer alphabet has {len(alphabet)} symbols, inner code has {len(inner)} words")
    assignment = dict(zip(alphabet, inner))
    if len(assignment) != len(alphabet):
        raise AlphabetMismatch("outer alphabet has repeated symbols")
    as_str = all(isinstance(w, str) for w in inner)
    result = []
    for word in outer:
        try:
            parts = [assignment[s] for s in word]
        except KeyError as exc:
            raise AlphabetMismatch(f"symbol {exc.args[0]!r} is not in the outer alphabet") from None
        result.append("".join(parts) if as_str else tuple(x for part in parts for x in part))
    return result
