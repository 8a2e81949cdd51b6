"""Rate comparisons, tag benchmarks and CSV data for the result figures."""

from __future__ import annotations

import csv
import datetime as _dt
import io
import platform
import statistics
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from ._numtheory import group_order_factors, nearest_prime
from .concat import derive_params, derive_params_uncached, false_id_bound, identity_from_seed, tag
from .protocol import random_position, run_fixed_randomness_experiment

__all__ = [
    "REFERENCE_Q_VALUES",
    "RateComparison",
    "BenchRecord",
    "rate_comparison",
    "bench_tag",
    "emit_figure_data",
    "format_lambda2",
    "nearest_prime",
    "FIGURES",
]

#: Base-field sizes of the (q, 3, 2) sweep reported for the trade-off figures.
REFERENCE_Q_VALUES = (23, 193, 1009, 10007, 100003, 1000037, 10285181, 100600999)


@dataclass(frozen=True)
class RateComparison:
    """Identification rate against the transmission rate of the same channel uses.

    Rates are kept as multiples of log(q)/n: ``r_T`` counts the q-ary symbols in
    a randomness-tag pair, ``r_ID`` the q-ary symbols indexing an identity.
    """

    scheme: str
    params: tuple[int, ...]
    r_T: int
    r_ID: int
    ratio: Fraction
    exponential_form: str | None = None

    @property
    def r_T_description(self) -> str:
        return f"log(q^{self.r_T})/n"


def rate_comparison(scheme: str, q: int, k: int, delta: int | None = None) -> RateComparison:
    if scheme == "single-rs":
        # q randomness values times q tags; q^k codewords
        return RateComparison(scheme, (q, k), 2, k, Fraction(k, 2))
    if scheme == "double-rs":
        if delta is None:
            raise ValueError("double-rs needs delta")
        r_id = k * q ** (k - delta)
        return RateComparison(
            scheme, (q, k, delta), k + 2, r_id, Fraction(r_id, k + 2), f"exp(({k}-{delta})*n*r_T)"
        )
    raise ValueError(f"unknown scheme {scheme!r}")


@dataclass(frozen=True)
class BenchRecord:
    q: int
    k: int
    delta: int
    wall_time_one_tag: float
    repetitions: int
    log10_identities: float
    lambda2_bound: float
    timestamp: str
    host: str


def _host() -> str:
    return f"{platform.node()} {platform.machine()} {platform.python_implementation()}-{platform.python_version()}"


def _pipeline(q: int, k: int, delta: int, seed: int) -> float:
    group_order_factors.cache_clear()
    start = time.perf_counter()
    params = derive_params_uncached(q, k, delta)
    identity = identity_from_seed(params, seed)
    j = random_position(params, np.random.default_rng(seed))
    tag(params, identity, j)
    return time.perf_counter() - start


def bench_tag(q: int, k: int, delta: int, repetitions: int = 5, seed: int = 0) -> BenchRecord:
    """Median wall time of build-system + seeded identity + random j + tag.

    One warm-up run is made first and discarded; repetition r uses seed + r.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    _pipeline(q, k, delta, seed)
    times = [_pipeline(q, k, delta, seed + r) for r in range(repetitions)]
    params = derive_params(q, k, delta)
    return BenchRecord(
        q, k, delta,
        statistics.median(times), repetitions,
        params.log10_identities, float(false_id_bound(params)),
        _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"), _host(),
    )


def format_lambda2(x: float | Fraction) -> str:
    x = float(x)
    return f"{x:.6e}" if x < 1e-4 else f"{x:.6f}"


FIGURES = {
    "tradeoff": ("q", "k", "delta", "time_s", "lambda2", "log10_identities"),
    "identities-vs-time": ("q", "k", "delta", "time_s", "log10_identities"),
    "lambda2-vs-params": ("q", "k", "delta", "n_c", "d_c", "lambda2", "log10_identities"),
    "fixed-randomness": (
        "q", "k", "delta", "trials", "seed", "false_accepts", "ratio",
        "ci_low", "ci_high", "expected", "lambda2",
    ),
}


def _rows(figure: str, params_list, trials: int, seed: int, repetitions: int):
    for q, k, delta in params_list:
        params = derive_params(q, k, delta)
        lam = format_lambda2(false_id_bound(params))
        logn = f"{params.log10_identities:.4f}"
        if figure == "lambda2-vs-params":
            yield (q, k, delta, params.n_c, params.d_c, lam, logn)
        elif figure in ("tradeoff", "identities-vs-time"):
            t = f"{bench_tag(q, k, delta, repetitions, seed).wall_time_one_tag:.6g}"
            yield (q, k, delta, t, lam, logn) if figure == "tradeoff" else (q, k, delta, t, logn)
        else:
            rep = run_fixed_randomness_experiment(params, trials, seed)
            yield (
                q, k, delta, trials, seed, rep.false_accepts, f"{rep.ratio:.6f}",
                f"{rep.ci_low:.6f}", f"{rep.ci_high:.6f}", f"{float(rep.expected):.6f}", lam,
            )


def emit_figure_data(
    figure: str,
    params_list: Sequence[tuple[int, int, int]],
    out: str | Path | None = None,
    *,
    trials: int = 1000,
    seed: int = 0,
    repetitions: int = 3,
) -> str:
    """Write one CSV row per parameter set and return the CSV text.

    Analytic columns are exact and byte-stable; ``time_s`` is measured.
    """
    if figure not in FIGURES:
        raise ValueError(f"unknown figure {figure!r}; choose from {sorted(FIGURES)}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIGURES[figure])
    for row in _rows(figure, params_list, trials, seed, repetitions):
        writer.writerow(row)
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text)
    return text
