"""
Deciding f(x) <= y from noisy evaluations
=========================================

The doubling test averages 1, 2, 4, ... draws until the estimate clears
y by a confidence width, so easy points are cheap and only points near
the graph cost real money.  Points closer than the give-up band resolve
by sign when the cap is reached, flagged as give-ups.
"""

import numpy as np

from epiwalk import (AdaptiveConfig, NoiseModel, NoisyOracle, decide,
                     error_bound, get_function)

func = get_function("quadratic", 1)
sigma = 1.0
cfg = AdaptiveConfig.create(sigma=sigma, give_up_band=0.05, confidence=3.0)
print(f"confidence 3.0, sigma {sigma}, band 0.05 -> averaging cap "
      f"max_m = {cfg.max_m}")

# Cost scales with how close the point sits to the graph: f(0.3) = 0.09.
oracle = NoisyOracle(func, NoiseModel("gaussian", sigma), seed=4)
print(f"\n{'y':>6} {'gap':>6} {'verdict':>16} {'queries':>8}")
for y in (2.09, 0.59, 0.21, 0.11, 0.07):
    out = decide(np.array([0.3, y]), cfg, oracle.channel((int(y * 100),)))
    gap = y - 0.09
    print(f"{y:>6.2f} {gap:>6.2f} {out.verdict.value:>16} "
          f"{out.queries_spent:>8}")

# The wrong-verdict probability falls exponentially in the confidence
# multiplier; the analytic bound is checkable by simulation.
delta = 0.2
bound = error_bound(delta, cfg)
trials = 2000
wrong = 0
for t in range(trials):
    point = np.array([0.3, 0.09 + delta])  # truly inside by delta
    out = decide(point, cfg, oracle.channel((7, t)))
    wrong += not out.verdict.inside
print(f"\ngap {delta}: empirical error {wrong / trials:.4f} "
      f"vs bound {bound:.4f} over {trials} trials")

# Without noise the test degenerates to one exact comparison.
exact = NoisyOracle(func, NoiseModel("none", 0.0), seed=0)
quiet = AdaptiveConfig.create(sigma=0.0, give_up_band=0.05, confidence=3.0)
out = decide(np.array([0.3, 0.1]), quiet, exact)
print(f"\nnoiseless: verdict {out.verdict.value} in "
      f"{out.queries_spent} query")
