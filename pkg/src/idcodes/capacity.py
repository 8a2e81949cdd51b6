"""Finite-n view of the three capacity conditions for tag codes.

For a family of block codes [M(n), k(n), d(n)]_{q(n)} the conditions are
log k / log M -> 1, log q / log M -> 0 and d / M -> 1.  Only finitely many
family members can be evaluated, so each condition is reported as its ratio
sequence plus a trend verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientPoints

CONDITIONS = (
    ("size", "log k / log M", 1.0),
    ("tag", "log q / log M", 0.0),
    ("distance", "d / M", 1.0),
)

_REL_TOL = 1e-12


@dataclass(frozen=True)
class ConditionTrend:
    name: str
    expression: str
    limit: float
    ratios: tuple[float, ...]
    trend: str  # increasing | decreasing | flat | mixed
    toward_limit: bool

    @property
    def satisfied(self) -> bool:
        return self.toward_limit


@dataclass(frozen=True)
class CapacityReport:
    points: tuple[tuple[int, int, int, int], ...]
    conditions: tuple[ConditionTrend, ...] = field(default=())

    def __getitem__(self, name: str) -> ConditionTrend:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failing(self) -> list[str]:
        return [c.name for c in self.conditions if not c.satisfied]

    def to_dict(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "conditions": [
                {
                    "name": c.name,
                    "expression": c.expression,
                    "limit": c.limit,
                    "ratios": list(c.ratios),
                    "trend": c.trend,
                    "toward_limit": c.toward_limit,
                }
                for c in self.conditions
            ],
            "failing": self.failing,
        }


def _trend(values: Sequence[float]) -> str:
    diffs = []
    for a, b in zip(values, values[1:]):
        scale = max(abs(a), abs(b), 1.0)
        d = b - a
        diffs.append(0 if abs(d) <= _REL_TOL * scale else (1 if d > 0 else -1))
    if all(d == 0 for d in diffs):
        return "flat"
    if all(d >= 0 for d in diffs):
        return "increasing"
    if all(d <= 0 for d in diffs):
        return "decreasing"
    return "mixed"


def _toward(values: Sequence[float], limit: float) -> bool:
    gaps = [abs(v - limit) for v in values]
    if all(g <= _REL_TOL for g in gaps):
        return True
    return _trend(gaps) == "decreasing"


def capacity_conditions(points: Sequence[tuple[int, int, int, int]]) -> CapacityReport:
    """Evaluate the three conditions on a family of (M, k, d, q) tuples.

    Needs at least three points with non-decreasing M.
    """
    pts = tuple(tuple(int(x) for x in p) for p in points)
    if len(pts) < 3:
        raise InsufficientPoints(f"need at least 3 family members, got {len(pts)}")
    if any(b[0] < a[0] for a, b in zip(pts, pts[1:])):
        raise ValueError("family members must be ordered by non-decreasing blocklength M")
    if any(M < 2 or k < 1 or q < 2 for M, k, _, q in pts):
        raise ValueError("need M >= 2, k >= 1, q >= 2 for every point")
    series = (
        [math.log(k) / math.log(M) for M, k, _, _ in pts],
        [math.log(q) / math.log(M) for M, _, _, q in pts],
        [float(Fraction(d, M)) for M, _, d, _ in pts],
    )
    conds = tuple(
        ConditionTrend(name, expr, limit, tuple(vals), _trend(vals), _toward(vals, limit))
        for (name, expr, limit), vals in zip(CONDITIONS, series)
    )
    return CapacityReport(pts, conds)


def concat_family(qs: Sequence[int], k: int, delta: int) -> list[tuple[int, int, int, int]]:
    """(M, k, d, q) of the concatenated RS codes (q, k, delta) for each q."""
    out = []
    for q in qs:
        outer_k = q ** (k - delta)
        out.append((q ** (k + 1), k * outer_k, (q - k + 1) * (q**k - outer_k + 1), q))
    return out


def single_rs_family(qs: Sequence[int], k: int) -> list[tuple[int, int, int, int]]:
    """(M, k, d, q) of full-length (q, k) RS codes, M = q."""
    return [(q, k, q - k + 1, q) for q in qs]
