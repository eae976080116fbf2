"""Epigraph bodies, affine frames, and analytic reference shapes.

The optimizer works in the lifted space: a point ``p = (x, y)`` pairs a
domain point with a value coordinate.  The body of interest at ceiling
``C`` is ``{(x, y) : f(x) <= y <= C, |x_i| <= halfwidth}``, a convex set
whenever ``f`` is convex.  This module provides exact membership for
bodies with analytically known ``f``, invertible affine frames used to
keep sampling coordinates near-isotropic, and closed-form facts
(areas, centroids, cut survival ratios, direct samplers) for the shapes
the test-suite uses as ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class EpigraphBody:
    """Region between a function graph and a flat ceiling over a cube.

    ``f`` is the exact function (no noise); ``dim`` is the domain
    dimension, so points of the body live in ``dim + 1`` coordinates with
    the value last.
    """

    f: Callable[[np.ndarray], float]
    dim: int
    ceiling: float
    halfwidth: float = 0.5

    @property
    def ambient_dim(self) -> int:
        return self.dim + 1

    def split(self, p: np.ndarray) -> tuple[np.ndarray, float]:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.ambient_dim,):
            raise ValueError(f"expected point of length {self.ambient_dim}")
        return p[:-1], float(p[-1])

    def contains(self, p: np.ndarray, tol: float = 0.0) -> bool:
        """Exact membership: below the ceiling, above the graph, inside the cube."""
        x, y = self.split(p)
        if float(np.max(np.abs(x))) > self.halfwidth + tol:
            return False
        if y > self.ceiling + tol:
            return False
        return y >= float(self.f(x)) - tol

    def vertical_gap(self, p: np.ndarray) -> float:
        """Signed margin ``y - f(x)``: nonnegative on or above the graph."""
        x, y = self.split(p)
        return y - float(self.f(x))

    def with_ceiling(self, ceiling: float) -> "EpigraphBody":
        return EpigraphBody(self.f, self.dim, ceiling, self.halfwidth)


@dataclass(frozen=True)
class AffineMap:
    """Invertible map ``p -> linear_part @ p + offset`` with cached inverse.

    ``apply`` sends original coordinates to the walk frame; ``unapply``
    inverts exactly (up to round-off).  Construction rejects singular or
    near-singular linear parts: walking in a collapsed frame would
    silently corrupt every later epoch.
    """

    linear_part: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.linear_part, dtype=float)
        b = np.asarray(self.offset, dtype=float)
        d = b.shape[0]
        if A.shape != (d, d):
            raise ValueError("linear_part must be square and match offset")
        if not np.isfinite(A).all() or not np.isfinite(b).all():
            raise ValueError("map entries must be finite")
        if np.linalg.cond(A) > 1e12:
            raise ValueError("linear part is singular or near-singular")
        object.__setattr__(self, "linear_part", A)
        object.__setattr__(self, "offset", b)
        object.__setattr__(self, "inverse_linear_part", np.linalg.inv(A))

    @classmethod
    def identity(cls, dim: int) -> "AffineMap":
        return cls(np.eye(dim), np.zeros(dim))

    @classmethod
    def whitening(cls, W: np.ndarray, mean: np.ndarray) -> "AffineMap":
        """The map ``z -> W (z - mean)`` in linear-plus-offset form."""
        W = np.asarray(W, dtype=float)
        mean = np.asarray(mean, dtype=float)
        return cls(W, -W @ mean)

    def apply(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        return p @ self.linear_part.T + self.offset

    def unapply(self, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        return (q - self.offset) @ self.inverse_linear_part.T

    def compose_after(self, other: "AffineMap") -> "AffineMap":
        """Map equal to applying ``other`` first, then ``self``."""
        A = self.linear_part @ other.linear_part
        b = self.linear_part @ other.offset + self.offset
        return AffineMap(A, b)


def exact_membership(p: np.ndarray, body: EpigraphBody) -> bool:
    """Noise-free membership test; see :meth:`EpigraphBody.contains`."""
    return body.contains(p)


def vertical_gap(p: np.ndarray, f) -> float:
    """Signed vertical margin ``y - f(x)`` of a lifted point.

    Positive strictly above the graph, zero on it, negative below.
    ``f`` is any callable on the x-part (exact access; diagnostics only).
    """
    p = np.asarray(p, dtype=float)
    return float(p[-1]) - float(f(p[:-1]))


# ---------------------------------------------------------------------------
# Analytic reference bodies.  Each entry gives exact area/volume, the value
# coordinate of the centroid, the fraction of volume below the centroid
# value, and a direct uniform sampler for cross-checking the walk.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReferenceBody:
    """A body with closed-form geometry used as test ground truth."""

    name: str
    body: EpigraphBody
    volume: float
    centroid_value: float
    below_centroid_fraction: float
    sample: Callable[[np.random.Generator, int], np.ndarray]


def triangle2d(ceiling: float = 0.5) -> ReferenceBody:
    """Epigraph of ``|x|`` on ``[-1/2, 1/2]`` under ``ceiling <= 1/2``.

    The region is an isoceles triangle with apex at the origin: area
    ``C^2``, centroid value ``2C/3`` measured from the apex... for the
    standard ceiling 1/2: area 1/4, centroid value 1/3, and the part below
    the centroid value is a similar triangle of area ratio 4/9.
    """
    C = float(ceiling)
    if not 0 < C <= 0.5:
        raise ValueError("ceiling must lie in (0, 1/2] for the triangle")
    body = EpigraphBody(lambda x: float(abs(x[0])), dim=1, ceiling=C)

    def sample(rng: np.random.Generator, count: int) -> np.ndarray:
        # y has density 2y/C^2 on [0, C]; x is uniform on [-y, y] given y.
        y = C * np.sqrt(rng.random(count))
        x = y * (2.0 * rng.random(count) - 1.0)
        return np.column_stack([x, y])

    return ReferenceBody(
        name="triangle2d", body=body,
        volume=C * C,
        centroid_value=2.0 * C / 3.0,
        below_centroid_fraction=4.0 / 9.0,
        sample=sample,
    )


def parabola2d(ceiling: float = 0.25) -> ReferenceBody:
    """Epigraph of ``x^2`` on ``[-1/2, 1/2]`` under ``ceiling <= 1/4``.

    Area ``(4/3) C^(3/2)``; centroid value ``(3/5) C``; the slice below
    the centroid value holds ``(3/5)^(3/2)`` of the volume.
    """
    C = float(ceiling)
    if not 0 < C <= 0.25:
        raise ValueError("ceiling must lie in (0, 1/4] for the parabola")
    body = EpigraphBody(lambda x: float(x[0] * x[0]), dim=1, ceiling=C)

    def sample(rng: np.random.Generator, count: int) -> np.ndarray:
        # Width at value y is 2*sqrt(y), so y has density prop. to sqrt(y):
        # y = C * U^(2/3).  x is uniform on [-sqrt(y), sqrt(y)] given y.
        y = C * rng.random(count) ** (2.0 / 3.0)
        x = np.sqrt(y) * (2.0 * rng.random(count) - 1.0)
        return np.column_stack([x, y])

    return ReferenceBody(
        name="parabola2d", body=body,
        volume=(4.0 / 3.0) * C ** 1.5,
        centroid_value=0.6 * C,
        below_centroid_fraction=0.6 ** 1.5,
        sample=sample,
    )


def boxN(dim: int, halfwidth: float = 0.5, floor: float = 0.0,
         ceiling: float = 1.0) -> ReferenceBody:
    """Box body: flat function at ``floor`` under ``ceiling`` over a cube.

    The value coordinate is uniform, so the centroid value is the midpoint
    and exactly half the volume lies below it.
    """
    if ceiling <= floor:
        raise ValueError("ceiling must exceed floor")
    side = 2.0 * halfwidth
    height = ceiling - floor
    body = EpigraphBody(lambda x: float(floor), dim=dim,
                        ceiling=ceiling, halfwidth=halfwidth)

    def sample(rng: np.random.Generator, count: int) -> np.ndarray:
        x = rng.uniform(-halfwidth, halfwidth, size=(count, dim))
        y = rng.uniform(floor, ceiling, size=count)
        return np.column_stack([x, y])

    return ReferenceBody(
        name=f"box{dim + 1}d", body=body,
        volume=side ** dim * height,
        centroid_value=floor + 0.5 * height,
        below_centroid_fraction=0.5,
        sample=sample,
    )


REFERENCE_BODIES = {
    "triangle2d": triangle2d,
    "parabola2d": parabola2d,
}


def analytic_centroid_and_cut(shape: ReferenceBody) -> tuple[float, float]:
    """Exact centroid value-coordinate and sub-centroid volume fraction."""
    return shape.centroid_value, shape.below_centroid_fraction


def reference_body(name: str, **kwargs) -> ReferenceBody:
    """Construct a named reference body (``boxNd`` via ``boxN``)."""
    if name == "square":
        # Unit square: the 1-dim flat body with unit ceiling.
        return boxN(1, **kwargs)
    if name in REFERENCE_BODIES:
        return REFERENCE_BODIES[name](**kwargs)
    if name.startswith("box") and name.endswith("d"):
        ambient = int(name[3:-1])
        if ambient < 2:
            raise ValueError("box bodies need ambient dimension >= 2")
        return boxN(ambient - 1, **kwargs)
    raise KeyError(f"unknown reference body {name!r}")
