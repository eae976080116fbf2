"""Isotropic rounding: whitening transforms estimated from samples.

Fitting maps sample coordinates to a frame where their covariance is
near the identity, which keeps the ball walk's step size meaningful as
the body shrinks and elongates across epochs.  Achieved isotropy is
always measured on held-out samples, never the fitting ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .defaults import DEFAULT_ALPHA
from .geometry import AffineMap

# Relative eigenvalue floor guarding against collapsed sample clouds.
_EIG_FLOOR_REL = 1e-10
_EIG_FLOOR_ABS = 1e-12


@dataclass(frozen=True)
class IsotropyReport:
    """Covariance spectrum of transformed held-out samples.

    ``theta_hat`` is the farthest spectrum endpoint from 1, so a value
    below 0.5 certifies every direction's second moment within [0.5, 1.5].
    """

    theta_hat: float
    min_eig: float
    max_eig: float
    sample_count: int
    flagged: bool = False


def _points_of(samples) -> np.ndarray:
    pts = getattr(samples, "points", samples)
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    return pts


def default_sample_count(n: int, alpha: float = DEFAULT_ALPHA) -> int:
    """Recommended sample count for fitting a rounding transform.

    ``max(4(n+1), ceil(alpha (n+1) ln(n+2)^3))``: linear floor for tiny
    dimensions, n log-cubed growth beyond.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    grown = math.ceil(alpha * (n + 1) * math.log(n + 2) ** 3)
    return max(4 * (n + 1), grown)


def fit_transform(samples, with_flag: bool = False):
    """Whitening map ``z -> Cov^(-1/2) (z - mean)`` from sample moments.

    Needs at least ``d + 1`` points in dimension ``d``.  A (near-)singular
    sample covariance is floored rather than fatal: the returned map is
    usable and the condition is reported when ``with_flag`` is set.
    """
    pts = _points_of(samples)
    count, d = pts.shape
    if count < d + 1:
        raise ValueError(f"need at least {d + 1} samples to fit in "
                         f"dimension {d}, got {count}")
    mu = pts.mean(axis=0)
    cov = np.cov(pts, rowvar=False, ddof=1).reshape(d, d)
    eigvals, eigvecs = np.linalg.eigh(cov)
    floor = max(_EIG_FLOOR_REL * float(eigvals.max(initial=0.0)),
                _EIG_FLOOR_ABS)
    flagged = bool(np.any(eigvals < floor))
    floored = np.maximum(eigvals, floor)
    W = eigvecs @ np.diag(1.0 / np.sqrt(floored)) @ eigvecs.T
    fitted = AffineMap.whitening(W, mu)
    return (fitted, flagged) if with_flag else fitted


def isotropy_report(samples, map: AffineMap) -> IsotropyReport:
    """Spectrum of the transformed sample covariance, from held-out points."""
    pts = _points_of(samples)
    transformed = map.apply(pts)
    d = transformed.shape[1]
    if pts.shape[0] < 2:
        return IsotropyReport(theta_hat=1.0, min_eig=0.0, max_eig=0.0,
                              sample_count=pts.shape[0], flagged=True)
    cov = np.cov(transformed, rowvar=False, ddof=1).reshape(d, d)
    eigvals = np.linalg.eigvalsh(cov)
    min_eig, max_eig = float(eigvals[0]), float(eigvals[-1])
    theta = max(abs(1.0 - min_eig), abs(max_eig - 1.0))
    flagged = max_eig <= _EIG_FLOOR_ABS
    return IsotropyReport(theta_hat=theta, min_eig=min_eig, max_eig=max_eig,
                          sample_count=pts.shape[0], flagged=flagged)
