"""Noisy zeroth-order function evaluation with query accounting.

A :class:`NoisyOracle` wraps a deterministic convex test function and
returns ``f(x)`` corrupted by additive noise, one independent draw per
query.  Every query is charged to a :class:`QueryLedger` under a named
phase so that end-to-end runs can report exactly where evaluations went.

Determinism model: the oracle owns a base seed.  Independent consumers
(walk chains, warm starts, extraction) each obtain a :class:`OracleChannel`
keyed by a tuple of nonnegative integers.  Channel streams are derived
from ``SeedSequence((seed, *key))``, so the draws a consumer sees depend
only on its key and its own query order, never on how concurrent
consumers interleave.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

PHASES = ("warmstart", "sample", "cut_estimate", "final_extract")


class DomainError(ValueError):
    """Raised when a query point leaves the domain cube."""


@dataclass(frozen=True)
class TestFunction:
    """A convex function on an axis-aligned cube centered at the origin.

    Attributes
    ----------
    name : str
        Identifier used by the benchmark CLI.
    dim : int
        Number of input coordinates.
    evaluate : callable
        Maps a length-``dim`` array to a float.  Must be convex on the cube.
    known_min : float
        Exact minimum value over the cube.
    known_argmin : ndarray
        A point attaining ``known_min``.
    halfwidth : float
        Half the cube side; the domain is ``max_i |x_i| <= halfwidth``.
    cube_max : float
        Exact maximum over the cube, used as the initial epigraph ceiling.
    """

    name: str
    dim: int
    evaluate: Callable[[np.ndarray], float]
    known_min: float
    known_argmin: np.ndarray
    halfwidth: float
    cube_max: float

    def __call__(self, x: np.ndarray) -> float:
        return float(self.evaluate(np.asarray(x, dtype=float)))

    def in_domain(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return x.shape == (self.dim,) and float(np.max(np.abs(x))) <= self.halfwidth + tol


def _alternating_shift(dim: int, halfwidth: float) -> np.ndarray:
    # Default interior minimizer for the shifted family: +-h/2 alternating.
    signs = np.array([1.0 if i % 2 == 0 else -1.0 for i in range(dim)])
    return 0.5 * halfwidth * signs


def builtin_suite(dim: int, halfwidth: float = 0.5,
                  shift: np.ndarray | None = None) -> list[TestFunction]:
    """Standard convex test functions on the cube, with exact extrema.

    Parameters
    ----------
    dim : int
        Input dimension, at least 1.
    halfwidth : float
        Cube half-side (domain is ``|x_i| <= halfwidth``).
    shift : ndarray, optional
        Minimizer for the shifted quadratic; must lie in the cube.
        Defaults to an alternating ``+-halfwidth/2`` pattern.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    h = float(halfwidth)
    if h <= 0:
        raise ValueError("halfwidth must be positive")
    if shift is None:
        shift = _alternating_shift(dim, h)
    a = np.asarray(shift, dtype=float)
    if a.shape != (dim,) or np.max(np.abs(a)) > h:
        raise ValueError("shift must be a length-dim point inside the cube")

    origin = np.zeros(dim)
    suite = [
        TestFunction(
            name="abs-sum", dim=dim,
            evaluate=lambda x: float(np.sum(np.abs(x))),
            known_min=0.0, known_argmin=origin, halfwidth=h,
            cube_max=dim * h,
        ),
        TestFunction(
            name="quadratic", dim=dim,
            evaluate=lambda x: float(np.dot(x, x)),
            known_min=0.0, known_argmin=origin, halfwidth=h,
            cube_max=dim * h * h,
        ),
        TestFunction(
            name="max-coordinate", dim=dim,
            evaluate=lambda x: float(np.max(x)),
            known_min=-h, known_argmin=np.full(dim, -h), halfwidth=h,
            cube_max=h,
        ),
        TestFunction(
            name="shifted-quadratic", dim=dim,
            evaluate=lambda x, a=a: float(np.sum((x - a) ** 2)),
            known_min=0.0, known_argmin=a.copy(), halfwidth=h,
            # Coordinate-wise max of (x_i - a_i)^2 is attained at the far face.
            cube_max=float(np.sum((h + np.abs(a)) ** 2)),
        ),
    ]
    return suite


def get_function(name: str, dim: int, halfwidth: float = 0.5,
                 shift: np.ndarray | None = None) -> TestFunction:
    """Look up one suite entry by name."""
    for fn in builtin_suite(dim, halfwidth, shift):
        if fn.name == name:
            return fn
    names = ", ".join(f.name for f in builtin_suite(max(dim, 1), halfwidth))
    raise KeyError(f"unknown function {name!r}; choose one of: {names}")


@dataclass(frozen=True)
class NoiseModel:
    """Additive query noise: mean zero, standard deviation ``sigma``.

    ``kind`` is one of ``"gaussian"``, ``"uniform"`` (bounded on
    ``[-sigma*sqrt(3), sigma*sqrt(3)]``) or ``"none"``.
    """

    kind: str = "gaussian"
    sigma: float = 0.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "uniform", "none"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "none" or self.sigma == 0.0:
            return np.zeros(size)
        if self.kind == "gaussian":
            return rng.normal(0.0, self.sigma, size)
        half = self.sigma * np.sqrt(3.0)
        return rng.uniform(-half, half, size)


class QueryLedger:
    """Thread-safe counter of oracle queries, broken down by phase.

    The grand total always equals the sum over phases; both are updated
    under one lock so concurrent chains can charge queries safely.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.total_queries = 0
        self.per_phase = {p: 0 for p in PHASES}

    def add(self, phase: str, count: int) -> None:
        if phase not in self.per_phase:
            raise KeyError(f"unknown phase {phase!r}; expected one of {PHASES}")
        if count < 0:
            raise ValueError("count must be nonnegative")
        with self._lock:
            self.per_phase[phase] += count
            self.total_queries += count

    def snapshot(self) -> dict:
        with self._lock:
            return {"total_queries": self.total_queries,
                    "per_phase": dict(self.per_phase)}


class OracleChannel:
    """One independent noise stream of a :class:`NoisyOracle`.

    Queries through different channels are independent and their draws do
    not depend on interleaving with other channels.
    """

    def __init__(self, oracle: "NoisyOracle", key: Sequence[int]):
        key = tuple(int(k) for k in key)
        if any(k < 0 for k in key):
            raise ValueError("channel key entries must be nonnegative")
        self._oracle = oracle
        self._rng = np.random.default_rng(
            np.random.SeedSequence((oracle.seed,) + key))

    def mean_query(self, x: np.ndarray, m: int, phase: str) -> float:
        """Average of ``m`` fresh noisy evaluations at ``x``; charges ``m``."""
        if m < 1:
            raise ValueError("m must be >= 1")
        oracle = self._oracle
        x = np.asarray(x, dtype=float)
        if not oracle.func.in_domain(x):
            raise DomainError(
                f"query at {x} outside cube of halfwidth {oracle.func.halfwidth}")
        value = oracle.func(x)
        noise = oracle.noise.draw(self._rng, m)
        oracle.ledger.add(phase, m)
        return value + float(np.mean(noise))


@dataclass
class NoisyOracle:
    """Stochastic zeroth-order access to a test function.

    Ties together the function, the noise model, the seed, and the ledger.
    """

    func: TestFunction
    noise: NoiseModel
    seed: int
    ledger: QueryLedger = field(default_factory=QueryLedger)

    def channel(self, key: Sequence[int] = ()) -> OracleChannel:
        return OracleChannel(self, key)

    def query(self, x: np.ndarray, m: int = 1, phase: str = "sample") -> float:
        """Convenience root-channel query (key ``(0,)``), lazily created."""
        if not hasattr(self, "_root"):
            self._root = self.channel((0,))
        return self._root.mean_query(x, m, phase)
