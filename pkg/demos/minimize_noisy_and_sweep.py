"""
Noisy minimization end to end, plus an accuracy sweep
=====================================================

With noisy evaluations every membership decision costs a doubling run
of queries, so total cost grows like 1/eps^2.  This script does one
full noisy run, then sweeps eps and fits the log-log slope.  The same
runs are available from the command line:

    epiwalk run --func quadratic --dim 2 --sigma 0.1 --eps 0.1
    epiwalk sweep --vary eps --values 0.2,0.1,0.05 --func quadratic \
            --dim 2 --sigma 0.1

which also write result.json / trace.csv / sweep.csv for the plot tool.
"""

import numpy as np

from epiwalk import NoiseModel, OptimizeConfig, get_function, optimize

func = get_function("quadratic", 2)
noise = NoiseModel("gaussian", 0.1)

# One run at eps = 0.1.  The give-up counter tracks decisions that hit
# the averaging cap; they are resolved by sign instead of certainty.
result = optimize(func, noise, eps=0.1, cfg=OptimizeConfig(seed=0))
print(f"eps 0.1: subopt {result.subopt_if_known:.4f} in "
      f"{result.total_queries} queries, {result.epochs_run} epochs")
print(f"queries by phase: {result.per_phase}")
give_ups = sum(s.give_ups for s in result.trace)
print(f"give-ups across epochs: {give_ups}")

# Sweep eps and fit the scaling exponent.
print(f"\n{'eps':>6} {'queries':>10} {'subopt':>9} {'epochs':>7}")
eps_grid = [0.2, 0.1, 0.05]
totals = []
for index, eps in enumerate(eps_grid):
    seed = int(np.random.SeedSequence((0, index)).generate_state(1)[0])
    out = optimize(func, noise, eps=eps, cfg=OptimizeConfig(seed=seed))
    totals.append(out.total_queries)
    print(f"{eps:>6.2f} {out.total_queries:>10} "
          f"{out.subopt_if_known:>9.4f} {out.epochs_run:>7}")

slope = np.polyfit(np.log(1.0 / np.array(eps_grid)), np.log(totals), 1)[0]
print(f"\nlog-log slope of queries vs 1/eps: {slope:.2f} "
      f"(noise-dominated scaling is 2)")
