"""Ball Walk sampling over a (transformed) epigraph body.

The chain proposes a uniform point in the radius-``r`` ball around the
current state and moves only if a membership decider accepts it, which
leaves the uniform distribution on the body stationary.  Membership is
pluggable: exact predicates for analytic test bodies, or the adaptive
noisy test for real runs.  Chains own seed-derived RNG streams and
oracle channels, so results do not depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .adaptive import AdaptiveConfig, decide
from .defaults import DEFAULT_N_CHAINS
from .geometry import AffineMap, EpigraphBody

# A bound decider maps a walk-frame point to (inside, gave_up).
Decider = Callable[[np.ndarray], tuple[bool, bool]]


@dataclass(frozen=True)
class WalkConfig:
    step_radius: float
    steps_per_sample: int
    n_chains: int = DEFAULT_N_CHAINS
    rng_seed: int = 0

    def __post_init__(self):
        if self.step_radius <= 0:
            raise ValueError("step_radius must be positive")
        if self.steps_per_sample < 0:
            raise ValueError("steps_per_sample must be nonnegative")
        if self.n_chains < 1:
            raise ValueError("n_chains must be at least 1")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be nonnegative")


@dataclass
class SampleSet:
    """Points retained by the walk, in the coordinates they were walked in.

    ``coordinate_frame`` maps original coordinates to the walk frame, so
    ``originals()`` always recovers original-coordinate points.
    """

    points: np.ndarray
    coordinate_frame: AffineMap
    give_up_count: int = 0

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))

    def __len__(self) -> int:
        return self.points.shape[0]

    def originals(self) -> np.ndarray:
        return self.coordinate_frame.unapply(self.points)


class ExactMembership:
    """Noise-free membership for bodies with exact function access."""

    def __init__(self, body: EpigraphBody, frame: AffineMap | None = None):
        self.body = body
        self.frame = frame or AffineMap.identity(body.ambient_dim)

    def bind(self, chain_key: Sequence[int]) -> Decider:
        body, frame = self.body, self.frame

        def decider(q: np.ndarray) -> tuple[bool, bool]:
            return body.contains(frame.unapply(q)), False

        return decider


class AdaptiveMembership:
    """Noisy membership: exact cube and ceiling checks, adaptive graph test.

    Each chain key binds a distinct oracle channel keyed by
    ``(*tag, *chain_key)`` so concurrent chains see independent,
    schedule-free noise streams.
    """

    def __init__(self, body: EpigraphBody, frame: AffineMap,
                 cfg: AdaptiveConfig, oracle, tag: Sequence[int] = (),
                 phase: str = "sample"):
        self.body = body
        self.frame = frame
        self.cfg = cfg
        self.oracle = oracle
        self.tag = tuple(int(t) for t in tag)
        self.phase = phase

    def bind(self, chain_key: Sequence[int]) -> Decider:
        body, frame, cfg, phase = self.body, self.frame, self.cfg, self.phase
        channel = self.oracle.channel(self.tag + tuple(chain_key))
        halfwidth, ceiling = body.halfwidth, body.ceiling

        def decider(q: np.ndarray) -> tuple[bool, bool]:
            p = frame.unapply(q)
            x, y = p[:-1], p[-1]
            # Free exact constraints first; only the graph side costs queries.
            if float(np.max(np.abs(x))) > halfwidth or y > ceiling:
                return False, False
            d = decide(p, cfg, channel, phase=phase)
            return d.verdict.inside, d.verdict.gave_up

        return decider


def _as_tester(membership):
    if hasattr(membership, "bind"):
        return membership
    if callable(membership):
        def bind(chain_key):
            return lambda q: (bool(membership(q)), False)
        tester = type("CallableTester", (), {})()
        tester.bind = bind
        return tester
    raise TypeError("membership must provide bind() or be callable")


def _propose(current: np.ndarray, radius: float,
             rng: np.random.Generator) -> np.ndarray:
    d = current.shape[0]
    g = rng.standard_normal(d)
    norm = float(np.linalg.norm(g))
    u = rng.random()
    if norm == 0.0:
        return current.copy()
    return current + radius * u ** (1.0 / d) * (g / norm)


def step(current: np.ndarray, cfg: WalkConfig, membership,
         rng: np.random.Generator) -> np.ndarray:
    """One lazy ball-walk step: move to the proposal only if accepted."""
    decider = _as_tester(membership).bind((0,))
    q = _propose(np.asarray(current, dtype=float), cfg.step_radius, rng)
    inside, _ = decider(q)
    return q if inside else np.asarray(current, dtype=float)


def _advance(current: np.ndarray, steps: int, radius: float,
             decider: Decider, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    gave = 0
    for _ in range(steps):
        q = _propose(current, radius, rng)
        inside, gave_up = decider(q)
        if inside:
            current = q
            if gave_up:
                gave += 1
    return current, gave


def run_chains(seeds: SampleSet, target_count: int, cfg: WalkConfig,
               membership, stream: Sequence[int] = (),
               workers: int | None = None) -> SampleSet:
    """Harvest ``target_count`` points from ``n_chains`` independent chains.

    Seeds are dealt round-robin to chains; each chain jumps to its next
    unused seed before a retained point while seeds last, then keeps
    walking from its current state.  ``steps_per_sample`` proposals are
    made between retained points.  Retained points are merged round-robin,
    so with ``steps_per_sample = 0`` and ``target_count = len(seeds)`` the
    seeds come back unchanged and in order.  Results are identical whether
    chains run sequentially or on ``workers`` threads.
    """
    if len(seeds) == 0:
        raise ValueError("seeds are empty: re-run warm_start to obtain "
                         "interior samples before chaining")
    if target_count < 1:
        raise ValueError("target_count must be positive")
    tester = _as_tester(membership)
    stream = tuple(int(s) for s in stream)
    n_chains = cfg.n_chains
    counts = [target_count // n_chains + (1 if c < target_count % n_chains else 0)
              for c in range(n_chains)]

    def run_one(c: int) -> tuple[list[np.ndarray], int]:
        rng = np.random.default_rng(
            np.random.SeedSequence((cfg.rng_seed,) + stream + (c,)))
        decider = tester.bind((c,))
        queue = seeds.points[c::n_chains]
        current = (queue[0] if len(queue) else
                   seeds.points[c % len(seeds)]).copy()
        retained: list[np.ndarray] = []
        gave = 0
        next_seed = 0
        for _ in range(counts[c]):
            if next_seed < len(queue):
                current = queue[next_seed].copy()
                next_seed += 1
            current, g = _advance(current, cfg.steps_per_sample,
                                  cfg.step_radius, decider, rng)
            gave += g
            retained.append(current.copy())
        return retained, gave

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_one, range(n_chains)))
    else:
        results = [run_one(c) for c in range(n_chains)]

    merged: list[np.ndarray] = []
    for i in range(max(counts)):
        for c in range(n_chains):
            if i < len(results[c][0]):
                merged.append(results[c][0][i])
    give_ups = sum(r[1] for r in results)
    return SampleSet(points=np.array(merged),
                     coordinate_frame=seeds.coordinate_frame,
                     give_up_count=give_ups)


def warm_start(body: EpigraphBody, cfg: WalkConfig, membership, count: int,
               interior_point: np.ndarray | None = None,
               frame: AffineMap | None = None,
               stream: Sequence[int] = (0,),
               workers: int | None = None) -> SampleSet:
    """Burn in one long chain from an interior point, then harvest ``count``.

    ``interior_point`` is given in the walk frame; when omitted, the exact
    midpoint between the function value at the domain center and the
    ceiling is used (callers with only noisy access should pass their own
    estimated point).  Aborts if the interior point itself is rejected,
    which signals a ceiling at or below the function minimum.
    """
    frame = frame or AffineMap.identity(body.ambient_dim)
    if interior_point is None:
        x0 = np.zeros(body.dim)
        y0 = 0.5 * (float(body.f(x0)) + body.ceiling)
        interior_point = frame.apply(np.append(x0, y0))
    p0 = np.asarray(interior_point, dtype=float)

    tester = _as_tester(membership)
    stream = tuple(int(s) for s in stream)
    decider = tester.bind((cfg.n_chains,))
    inside, _ = decider(p0)
    if not inside:
        raise RuntimeError(
            "warm-start interior point rejected: the ceiling is too close "
            "to the function minimum for an interior region to exist")
    rng = np.random.default_rng(
        np.random.SeedSequence((cfg.rng_seed,) + stream + (cfg.n_chains,)))
    current, _ = _advance(p0, 10 * cfg.steps_per_sample, cfg.step_radius,
                          decider, rng)
    seeds = SampleSet(points=current[None, :], coordinate_frame=frame)
    return run_chains(seeds, count, cfg, membership,
                      stream=stream, workers=workers)
