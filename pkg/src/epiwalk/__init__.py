"""Zeroth-order stochastic convex optimization via epigraph sampling.

The method minimizes a convex function from noisy point evaluations
alone: it samples near-uniform points between the function's graph and a
shrinking ceiling with a ball-walk Markov chain, cuts the ceiling at the
sample centroid each epoch, and keeps the sampling geometry healthy by
whitening against the sample covariance.  Point-vs-graph comparisons use
an adaptive doubling test so each membership decision spends only the
queries its vertical gap requires.
"""

from .adaptive import (AdaptiveConfig, MembershipDecision, Verdict, decide,
                       default_confidence, error_bound)
from .ballwalk import (AdaptiveMembership, ExactMembership, SampleSet,
                       WalkConfig, run_chains, step, warm_start)
from .geometry import (AffineMap, EpigraphBody, ReferenceBody,
                       analytic_centroid_and_cut, boxN, exact_membership,
                       parabola2d, reference_body, triangle2d, vertical_gap)
from .optimizer import (EpochDeps, EpochState, EpochStats, OptimizeConfig,
                        RunResult, SampleStarvation, compute_cut_level, cut,
                        optimize, run_epoch)
from .oracle import (DomainError, NoiseModel, NoisyOracle, QueryLedger,
                     TestFunction, builtin_suite, get_function)
from .rounding import (IsotropyReport, default_sample_count, fit_transform,
                       isotropy_report)

__version__ = "0.1.0"

__all__ = [
    "AdaptiveConfig", "MembershipDecision", "Verdict", "decide",
    "default_confidence", "error_bound",
    "AdaptiveMembership", "ExactMembership", "SampleSet", "WalkConfig",
    "run_chains", "step", "warm_start",
    "AffineMap", "EpigraphBody", "ReferenceBody",
    "analytic_centroid_and_cut", "boxN", "exact_membership", "parabola2d",
    "reference_body", "triangle2d", "vertical_gap",
    "EpochDeps", "EpochState", "EpochStats", "OptimizeConfig", "RunResult",
    "SampleStarvation", "compute_cut_level", "cut", "optimize", "run_epoch",
    "DomainError", "NoiseModel", "NoisyOracle", "QueryLedger",
    "TestFunction", "builtin_suite", "get_function",
    "IsotropyReport", "default_sample_count", "fit_transform",
    "isotropy_report",
]
