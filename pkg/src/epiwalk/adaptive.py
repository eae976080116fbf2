"""Adaptive membership testing for lifted points under noisy evaluation.

Whether ``(x, y)`` lies above the function graph is decided from noisy
queries by doubling the averaging size: round ``m`` draws a fresh
``m``-average ``v`` and decides once ``y`` clears ``v`` by the confidence
width ``C * sigma / sqrt(m)``.  Points deep inside or outside resolve
cheaply; points vertically closer to the graph than the give-up band
may exhaust the cap ``max_m`` and fall back to the sign of ``y - v``,
reported as a GAVE_UP verdict rather than an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .defaults import DEFAULT_ELL


class Verdict(Enum):
    INSIDE = "INSIDE"
    OUTSIDE = "OUTSIDE"
    GAVE_UP_INSIDE = "GAVE_UP_INSIDE"
    GAVE_UP_OUTSIDE = "GAVE_UP_OUTSIDE"

    @property
    def inside(self) -> bool:
        return self in (Verdict.INSIDE, Verdict.GAVE_UP_INSIDE)

    @property
    def gave_up(self) -> bool:
        return self in (Verdict.GAVE_UP_INSIDE, Verdict.GAVE_UP_OUTSIDE)


def default_confidence(n: float, ell: float = DEFAULT_ELL) -> float:
    """Confidence multiplier ``sqrt(2 (ell+1) ln n)``, floored at n = 2.

    Natural logarithm; ``n`` below 2 uses ``ln 2`` so the width never
    collapses in tiny dimensions.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    return math.sqrt(2.0 * (ell + 1.0) * math.log(max(float(n), 2.0)))


def _next_pow2(x: float) -> int:
    if x <= 1.0:
        return 1
    return 1 << math.ceil(math.log2(x))


@dataclass(frozen=True)
class AdaptiveConfig:
    """Parameters of the doubling test.

    ``max_m`` is the smallest power of two at least ``4 C^2 sigma^2 /
    give_up_band^2`` (1 when ``sigma`` is 0): beyond that size the
    confidence width is inside the band, so doubling further cannot be
    justified by the sought gap.
    """

    confidence: float
    sigma: float
    give_up_band: float
    max_m: int
    error_exponent: float = DEFAULT_ELL

    def __post_init__(self):
        if self.confidence <= 0:
            raise ValueError("confidence must be positive")
        if self.give_up_band <= 0:
            raise ValueError("give_up_band must be positive")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        expected = self.expected_max_m(self.confidence, self.sigma,
                                       self.give_up_band)
        if self.max_m != expected:
            raise ValueError(f"max_m must be {expected} for these parameters")

    @staticmethod
    def expected_max_m(confidence: float, sigma: float, band: float) -> int:
        if band <= 0:
            raise ValueError("give_up_band must be positive")
        if sigma == 0.0:
            return 1
        return _next_pow2(4.0 * confidence**2 * sigma**2 / band**2)

    @classmethod
    def create(cls, sigma: float, give_up_band: float,
               confidence: float | None = None, n: float | None = None,
               error_exponent: float = DEFAULT_ELL) -> "AdaptiveConfig":
        """Build a config, deriving the confidence from ``n`` if not given."""
        if confidence is None:
            if n is None:
                raise ValueError("give either confidence or n")
            confidence = default_confidence(n, error_exponent)
        return cls(confidence=confidence, sigma=sigma,
                   give_up_band=give_up_band,
                   max_m=cls.expected_max_m(confidence, sigma, give_up_band),
                   error_exponent=error_exponent)


@dataclass(frozen=True)
class MembershipDecision:
    verdict: Verdict
    queries_spent: int
    final_m: int


def decide(p: np.ndarray, cfg: AdaptiveConfig, oracle,
           phase: str = "sample") -> MembershipDecision:
    """Classify a lifted point against the graph constraint ``f(x) <= y``.

    ``oracle`` is anything exposing ``mean_query(x, m, phase)``; per-chain
    channels keep concurrent walks reproducible.  Cube and ceiling checks
    are the caller's job: only the graph side of membership costs queries.
    """
    p = np.asarray(p, dtype=float)
    x, y = p[:-1], float(p[-1])
    query = getattr(oracle, "mean_query", None) or oracle.query

    if cfg.sigma == 0.0:
        v = query(x, 1, phase)
        verdict = Verdict.INSIDE if y >= v else Verdict.OUTSIDE
        return MembershipDecision(verdict, queries_spent=1, final_m=1)

    m, spent = 1, 0
    while True:
        v = query(x, m, phase)
        spent += m
        width = cfg.confidence * cfg.sigma / math.sqrt(m)
        if y <= v - width:
            return MembershipDecision(Verdict.OUTSIDE, spent, m)
        if y >= v + width:
            return MembershipDecision(Verdict.INSIDE, spent, m)
        if m >= cfg.max_m:
            verdict = (Verdict.GAVE_UP_INSIDE if y >= v
                       else Verdict.GAVE_UP_OUTSIDE)
            return MembershipDecision(verdict, spent, m)
        m *= 2


def error_bound(delta_abs: float, cfg: AdaptiveConfig) -> float:
    """Upper bound on the wrong-verdict probability at vertical gap ``delta_abs``.

    One-sided union bound over the doubling rounds:
    ``(log2(4 C^2 sigma^2 / delta^2) + 1) * exp(-C^2 / 2)``, clamped to
    [0, 1].  At the graph itself (``delta_abs = 0``) nothing is promised.
    """
    if delta_abs < 0:
        raise ValueError("delta_abs must be nonnegative")
    if delta_abs == 0.0:
        return 1.0
    if cfg.sigma == 0.0:
        return 0.0
    ratio = 4.0 * cfg.confidence**2 * cfg.sigma**2 / delta_abs**2
    rounds = math.log2(ratio) + 1.0
    bound = rounds * math.exp(-0.5 * cfg.confidence**2)
    return min(1.0, max(0.0, bound))
