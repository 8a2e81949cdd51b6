"""Identification over a noiseless channel, and false-identification experiments.

The sender of identity i draws a uniform randomness j and transmits the
challenge (j, T_i(j)).  A verifier holding identity i' accepts iff
T_i'(j) equals the received tag.

Random streams: every experiment derives its generators from the root seed as
``SeedSequence(seed, spawn_key=key)`` with key ``(0,)`` for the setup draws and
``(1, b)`` for trial block b (blocks of :data:`TRIAL_BLOCK` trials).  Results are
therefore the same for any number of workers.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .concat import ConcatParams, Identity, derive_params, false_id_bound, random_identity, tag
from .errors import MalformedChallenge

TRIAL_BLOCK = 250
EXACT_EXPONENT_BITS = 1 << 16


@dataclass(frozen=True)
class Challenge:
    """Randomness-tag pair sent from sender to verifier."""

    j: int
    t: int


@dataclass(frozen=True)
class VerifierDecision:
    accepted: bool
    challenge: Challenge
    verifier_identity_digest: str


@dataclass(frozen=True)
class FaExperimentReport:
    q: int
    k: int
    delta: int
    mode: str  # fixed-randomness | random-randomness
    trials: int
    false_accepts: int
    seed: int
    bound: Fraction
    expected: Fraction
    ci_low: float
    ci_high: float
    j: int | None = None

    @property
    def ratio(self) -> float:
        return self.false_accepts / self.trials

    @property
    def sigma(self) -> float:
        p = float(self.expected)
        return math.sqrt(p * (1 - p) / self.trials)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bound"] = float(self.bound)
        d["bound_exact"] = str(self.bound)
        d["expected"] = float(self.expected)
        d["ratio"] = self.ratio
        return d


def identity_digest(identity: Identity) -> str:
    h = hashlib.sha256()
    for _, blk in identity.blocks():
        h.update(np.ascontiguousarray(blk).tobytes())
    return h.hexdigest()[:16]


def random_position(params: ConcatParams, rng: np.random.Generator) -> int:
    """Uniform j in [0, q^(k+1)), assembled from k+1 uniform base-q digits."""
    digits = rng.integers(0, params.q, size=params.k + 1, dtype=np.int64).tolist()
    j = 0
    for d in reversed(digits):
        j = j * params.q + d
    return j


def send(params: ConcatParams, identity: Identity, rng: np.random.Generator) -> Challenge:
    j = random_position(params, rng)
    return Challenge(j, int(tag(params, identity, j)))


def verify(params: ConcatParams, identity: Identity, challenge: Challenge) -> VerifierDecision:
    j, t = challenge.j, challenge.t
    if not isinstance(j, (int, np.integer)) or not 0 <= j < params.n_c:
        raise MalformedChallenge(f"randomness {j!r} outside [0, {params.n_c})")
    if not isinstance(t, (int, np.integer)) or not 0 <= t < params.q:
        raise MalformedChallenge(f"tag {t!r} outside [0, {params.q})")
    accepted = int(tag(params, identity, int(j))) == t
    return VerifierDecision(accepted, challenge, identity_digest(identity))


def agreement_probability(params: ConcatParams) -> Fraction:
    """P(T_i(j) = T_i'(j)) for a uniform pair of distinct identities, at any j.

    Each tag is a surjective GF(q)-linear function of the identity, so every
    tag value is shared by exactly N/q of the N identities.  The result is
    (N/q - 1) / (N - 1); for astronomically large N it is returned as 1/q,
    which is off by less than 1/N.
    """
    q, e = params.identities
    if e * q.bit_length() > EXACT_EXPONENT_BITS:
        return Fraction(1, q)
    n = q**e
    return Fraction(n // q - 1, n - 1)


def wilson_interval(successes: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / n
    denom = 1 + z * z / n
    centre = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed & 0xFFFFFFFFFFFFFFFF, spawn_key=key)))


def _distinct_from(params: ConcatParams, other: Identity, rng: np.random.Generator) -> Identity:
    while True:
        ident = random_identity(params, rng)
        if not np.array_equal(ident.coefficients, other.coefficients):
            return ident


def _fixed_setup(params: ConcatParams, seed: int) -> tuple[Identity, int, int]:
    rng = _rng(seed, 0)
    fixed = random_identity(params, rng)
    j = random_position(params, rng)
    return fixed, j, int(tag(params, fixed, j))


def _fixed_block(args) -> int:
    (q, k, delta), seed, b, count = args
    params = derive_params(q, k, delta)
    fixed, j, t = _fixed_setup(params, seed)
    rng = _rng(seed, 1, b)
    hits = 0
    for _ in range(count):
        other = _distinct_from(params, fixed, rng)
        hits += int(tag(params, other, j)) == t
    return hits


def _average_block(args) -> int:
    (q, k, delta), seed, b, count = args
    params = derive_params(q, k, delta)
    rng = _rng(seed, 1, b)
    hits = 0
    for _ in range(count):
        sender = random_identity(params, rng)
        receiver = _distinct_from(params, sender, rng)
        hits += verify(params, receiver, send(params, sender, rng)).accepted
    return hits


def _run_blocks(fn, params: ConcatParams, trials: int, seed: int, workers: int) -> int:
    key = (params.q, params.k, params.delta)
    jobs = [
        (key, seed, b, min(TRIAL_BLOCK, trials - start))
        for b, start in enumerate(range(0, trials, TRIAL_BLOCK))
    ]
    if workers <= 1 or len(jobs) == 1:
        return sum(map(fn, jobs))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(fn, jobs))


def run_fixed_randomness_experiment(
    params: ConcatParams, trials: int, seed: int, workers: int = 1
) -> FaExperimentReport:
    """Fix one identity and one randomness j, then count how many of ``trials``
    other random identities (never equal to the fixed one) share its tag at j."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _, j, _ = _fixed_setup(params, seed)
    hits = _run_blocks(_fixed_block, params, trials, seed, workers)
    lo, hi = wilson_interval(hits, trials)
    return FaExperimentReport(
        params.q, params.k, params.delta, "fixed-randomness", trials, hits, seed,
        false_id_bound(params), agreement_probability(params), lo, hi, j,
    )


def run_average_fa_experiment(
    params: ConcatParams, trials: int, seed: int, workers: int = 1
) -> FaExperimentReport:
    """Each trial draws a sender, a distinct verifier identity and a fresh j."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    hits = _run_blocks(_average_block, params, trials, seed, workers)
    lo, hi = wilson_interval(hits, trials)
    return FaExperimentReport(
        params.q, params.k, params.delta, "random-randomness", trials, hits, seed,
        false_id_bound(params), agreement_probability(params), lo, hi,
    )
