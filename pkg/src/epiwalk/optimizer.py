"""The cut / round / sample epoch loop.

Each epoch lowers the epigraph ceiling to the mean value-coordinate of
the current near-uniform samples (a centroid cut, shrinking volume by a
constant factor), refits a whitening transform on half the survivors,
and walks fresh samples from the other half as warm seeds.  The loop
stops when the ceiling is within ``eps`` of the lowest sampled value,
when the epoch cap is hit, or when the query budget runs out.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from . import defaults
from .adaptive import AdaptiveConfig, default_confidence
from .ballwalk import (AdaptiveMembership, SampleSet, WalkConfig, run_chains,
                       warm_start)
from .geometry import AffineMap, EpigraphBody
from .oracle import NoiseModel, NoisyOracle, TestFunction

# Oracle channel key prefix for the final extraction pass; epoch tags are
# small integers, so this cannot collide with them.
_EXTRACT_KEY = 1_000_000


class SampleStarvation(RuntimeError):
    """A cut left too few survivors to continue; caller should re-warm."""

    def __init__(self, level: float, survivors: int):
        super().__init__(f"only {survivors} samples survive the cut at "
                         f"{level}; re-warm-start required")
        self.level = level
        self.survivors = survivors


@dataclass(frozen=True)
class OptimizeConfig:
    """Knobs of a run; ``None`` selects the documented default formulas."""

    seed: int = 0
    query_budget: int | None = None
    step_radius: float | None = None
    steps_per_sample: int | None = None
    n_t: int | None = None
    confidence: float | None = None
    ell: float = defaults.DEFAULT_ELL
    delta_band: float | None = None
    alpha: float | None = None
    n_chains: int = defaults.DEFAULT_N_CHAINS
    workers: int = 1
    epoch_cap: int | None = None


@dataclass
class EpochStats:
    epoch: int
    ceiling_before: float
    cut_level: float
    survivors_after_cut: int
    theta_hat: float
    give_ups: int
    queries_this_epoch: int
    queries_cum: int
    subopt_if_known: float
    wall_ms: float
    rewarmed: bool = False


@dataclass
class EpochState:
    t: int
    C_t: float
    transform: AffineMap
    retained: SampleSet
    n: int
    stats: EpochStats | None = None

    def original_points(self) -> np.ndarray:
        return self.retained.originals()

    def min_value_seen(self) -> float:
        return float(self.original_points()[:, -1].min())


@dataclass
class EpochDeps:
    """Everything an epoch needs besides the evolving state."""

    func: TestFunction
    oracle: NoisyOracle
    acfg: AdaptiveConfig
    wcfg: WalkConfig
    n_t: int
    workers: int = 1

    def body_at(self, ceiling: float) -> EpigraphBody:
        return EpigraphBody(self.func.evaluate, self.func.dim, ceiling,
                            self.func.halfwidth)


@dataclass
class RunResult:
    x_hat: np.ndarray
    f_hat: float
    total_queries: int
    epochs_run: int
    trace: list[EpochStats]
    config_echo: dict
    seed: int
    converged: bool
    budget_truncated: bool
    subopt_if_known: float
    per_phase: dict


def compute_cut_level(state: EpochState) -> float:
    """Mean value-coordinate of the retained samples, in original coordinates."""
    if len(state.retained) == 0:
        raise ValueError("no retained samples")
    return float(state.original_points()[:, -1].mean())


def cut(state: EpochState, level: float) -> EpochState:
    """Lower the ceiling to ``level``, keeping samples at or below it."""
    if level >= state.C_t:
        raise ValueError(f"cut level {level} must lie strictly below the "
                         f"current ceiling {state.C_t}")
    keep = state.original_points()[:, -1] <= level
    survivors = int(keep.sum())
    if survivors < state.n + 2:
        raise SampleStarvation(level, survivors)
    retained = SampleSet(points=state.retained.points[keep],
                         coordinate_frame=state.retained.coordinate_frame,
                         give_up_count=state.retained.give_up_count)
    return replace(state, C_t=level, retained=retained)


def _subopt(func: TestFunction, state: EpochState) -> float:
    # Ground-truth instrumentation only: exact f at the best sample's x.
    if func.known_min is None:
        return float("nan")
    originals = state.original_points()
    best = originals[np.argmin(originals[:, -1])]
    return func(best[:-1]) - func.known_min


def run_epoch(state: EpochState, deps: EpochDeps) -> EpochState:
    """One cut / round / sample pass; re-warms on sample starvation."""
    from .rounding import fit_transform, isotropy_report

    started = time.perf_counter()
    queries_before = deps.oracle.ledger.total_queries
    t_next = state.t + 1
    level = compute_cut_level(state)
    if level >= state.C_t:
        # Degenerate sample cloud; force progress by an epsilon nudge.
        level = state.C_t - max(1e-12, 1e-9 * abs(state.C_t))

    rewarmed = False
    theta_hat = float("nan")
    body_next = deps.body_at(level)
    try:
        after_cut = cut(state, level)
        survivors_after_cut = len(after_cut.retained)
        survivors = after_cut.original_points()
        d = state.n + 1
        if len(survivors) >= 2 * (d + 1):
            fit_pts, seed_pts = survivors[0::2], survivors[1::2]
        else:
            # Too few to split cleanly; reuse the full set for both roles.
            fit_pts = seed_pts = survivors
        transform, _ = fit_transform(fit_pts, with_flag=True)
        theta_hat = isotropy_report(seed_pts, transform).theta_hat
        tester = AdaptiveMembership(body_next, transform, deps.acfg,
                                    deps.oracle, tag=(t_next,))
        seeds = SampleSet(points=transform.apply(seed_pts),
                          coordinate_frame=transform)
        retained = run_chains(seeds, deps.n_t, deps.wcfg, tester,
                              stream=(t_next,), workers=deps.workers)
    except SampleStarvation as starved:
        # Recovery path: restart the walk inside the shrunken body from
        # the best point seen, keeping the previous frame.
        rewarmed = True
        survivors_after_cut = starved.survivors
        transform = state.transform
        originals = state.original_points()
        best = originals[np.argmin(originals[:, -1])]
        # The midpoint can exceed the new ceiling when even the best
        # sample sits above the (nudged) cut; stay strictly below it.
        interior_y = min(0.5 * (best[-1] + level),
                         level - 0.25 * (state.C_t - level))
        interior = np.append(best[:-1], interior_y)
        tester = AdaptiveMembership(body_next, transform, deps.acfg,
                                    deps.oracle, tag=(t_next, 1))
        retained = warm_start(body_next, deps.wcfg, tester, deps.n_t,
                              interior_point=transform.apply(interior),
                              frame=transform, stream=(t_next, 1),
                              workers=deps.workers)

    queries_cum = deps.oracle.ledger.total_queries
    next_state = EpochState(t=t_next, C_t=level, transform=transform,
                            retained=retained, n=state.n)
    next_state.stats = EpochStats(
        epoch=t_next,
        ceiling_before=state.C_t,
        cut_level=level,
        survivors_after_cut=survivors_after_cut,
        theta_hat=theta_hat,
        give_ups=retained.give_up_count,
        queries_this_epoch=queries_cum - queries_before,
        queries_cum=queries_cum,
        subopt_if_known=_subopt(deps.func, next_state),
        wall_ms=(time.perf_counter() - started) * 1e3,
        rewarmed=rewarmed,
    )
    return next_state


def _resolve(func: TestFunction, noise: NoiseModel, eps: float,
             cfg: OptimizeConfig) -> dict:
    n = func.dim
    sigma = 0.0 if noise.kind == "none" else noise.sigma
    confidence = (cfg.confidence if cfg.confidence is not None
                  else default_confidence(n, cfg.ell))
    band = (cfg.delta_band if cfg.delta_band is not None
            else defaults.default_give_up_band(eps, n))
    if cfg.n_t is not None:
        n_t = cfg.n_t
    elif cfg.alpha is not None:
        from .rounding import default_sample_count
        n_t = default_sample_count(n, cfg.alpha)
    else:
        n_t = defaults.default_optimizer_samples(n)
    return {
        "step_radius": cfg.step_radius or defaults.default_step_radius(n),
        "steps_per_sample": (cfg.steps_per_sample
                             if cfg.steps_per_sample is not None
                             else defaults.default_steps_per_sample(n)),
        "n_t": n_t,
        "confidence": confidence,
        "delta_band": band,
        "sigma": sigma,
        "epoch_cap": (cfg.epoch_cap if cfg.epoch_cap is not None
                      else defaults.default_epoch_cap(n, eps)),
        "m_final": 1 if sigma == 0.0 else
                   math.ceil(4.0 * confidence**2 * sigma**2 / eps**2),
    }


def optimize(func: TestFunction, noise: NoiseModel, eps: float,
             cfg: OptimizeConfig = OptimizeConfig()) -> RunResult:
    """Minimize ``func`` from noisy point queries to accuracy ``eps``."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    n = func.dim
    params = _resolve(func, noise, eps, cfg)
    oracle = NoisyOracle(func, noise, cfg.seed)
    acfg = AdaptiveConfig.create(sigma=params["sigma"],
                                 give_up_band=params["delta_band"],
                                 confidence=params["confidence"],
                                 error_exponent=cfg.ell)
    wcfg = WalkConfig(step_radius=params["step_radius"],
                      steps_per_sample=params["steps_per_sample"],
                      n_chains=cfg.n_chains, rng_seed=cfg.seed)
    deps = EpochDeps(func=func, oracle=oracle, acfg=acfg, wcfg=wcfg,
                     n_t=params["n_t"], workers=cfg.workers)
    budget = math.inf if cfg.query_budget is None else cfg.query_budget
    C0 = func.cube_max

    # Estimated midpoint between f(center) and the ceiling seeds the walk.
    x0 = np.zeros(n)
    y0_channel = oracle.channel((0, cfg.n_chains + 1))
    f0_hat = y0_channel.mean_query(x0, acfg.max_m, "warmstart")
    interior = np.append(x0, 0.5 * (f0_hat + C0))
    body0 = deps.body_at(C0)
    tester0 = AdaptiveMembership(body0, AffineMap.identity(n + 1), acfg,
                                 oracle, tag=(0,), phase="warmstart")
    retained = warm_start(body0, wcfg, tester0, params["n_t"],
                          interior_point=interior, stream=(0,),
                          workers=cfg.workers)
    state = EpochState(t=0, C_t=C0, transform=AffineMap.identity(n + 1),
                       retained=retained, n=n)

    trace: list[EpochStats] = []
    converged = False
    truncated = False
    while True:
        if oracle.ledger.total_queries >= budget:
            truncated = True
            break
        if state.C_t - state.min_value_seen() <= eps:
            converged = True
            break
        if state.t >= params["epoch_cap"]:
            break
        state = run_epoch(state, deps)
        trace.append(state.stats)

    # Extraction: re-estimate f at every retained x and keep the best.
    originals = state.original_points()
    channel = oracle.channel((_EXTRACT_KEY, 0))
    estimates = [channel.mean_query(p[:-1], params["m_final"],
                                    "final_extract")
                 for p in originals]
    best = int(np.argmin(estimates))
    x_hat = originals[best, :-1].copy()
    f_hat = float(estimates[best])

    config_echo = {
        "func": func.name, "dim": n, "halfwidth": func.halfwidth,
        "noise_kind": noise.kind, "sigma": noise.sigma, "eps": eps,
        "seed": cfg.seed,
        "query_budget": cfg.query_budget,
        "n_chains": cfg.n_chains, "workers": cfg.workers,
        "ell": cfg.ell, "alpha": cfg.alpha,
        "max_m": acfg.max_m,
        **{k: params[k] for k in ("step_radius", "steps_per_sample", "n_t",
                                  "confidence", "delta_band", "epoch_cap",
                                  "m_final")},
    }
    subopt = (func(x_hat) - func.known_min
              if func.known_min is not None else float("nan"))
    return RunResult(
        x_hat=x_hat, f_hat=f_hat,
        total_queries=oracle.ledger.total_queries,
        epochs_run=state.t, trace=trace, config_echo=config_echo,
        seed=cfg.seed, converged=converged, budget_truncated=truncated,
        subopt_if_known=subopt, per_phase=oracle.ledger.snapshot()["per_phase"],
    )
