"""
Querying a convex function through a noisy oracle
=================================================

Every evaluation returns f(x) plus fresh zero-mean noise, and every
evaluation is charged to a ledger.  Averaging m draws shrinks the noise
by sqrt(m) but costs m queries; that trade is the whole game.
"""

import numpy as np

from epiwalk import NoiseModel, NoisyOracle, builtin_suite, get_function

# The builtin suite: convex functions on the cube |x_i| <= 1/2 with
# known minima, so runs can report true suboptimality.
for fn in builtin_suite(dim=2):
    print(f"{fn.name:>18}: min {fn.known_min:+.3f} at {fn.known_argmin}, "
          f"cube max {fn.cube_max:.3f}")

# Wrap one of them with gaussian noise of standard deviation 0.5.
func = get_function("quadratic", 2)
oracle = NoisyOracle(func, NoiseModel("gaussian", 0.5), seed=0)
x = np.array([0.3, -0.1])

print(f"\ntrue value f({x}) = {func(x):.4f}")
for m in (1, 16, 256, 4096):
    estimate = oracle.query(x, m=m)
    print(f"average of {m:>4} draws: {estimate:+.4f} "
          f"(error {estimate - func(x):+.4f})")

# The ledger has counted every one of those draws.
snapshot = oracle.ledger.snapshot()
print(f"\nqueries charged: {snapshot['total_queries']}")
print(f"by phase: {snapshot['per_phase']}")

# Independent consumers read noise through keyed channels.  A channel's
# draws depend only on its key and its own query order, so concurrent
# consumers never perturb each other.
first = oracle.channel((1,)).mean_query(x, 4, "sample")
oracle.channel((2,)).mean_query(x, 100, "sample")  # interleaved work
again = NoisyOracle(func, NoiseModel("gaussian", 0.5), seed=0)
replay = again.channel((1,)).mean_query(x, 4, "sample")
print(f"\nchannel (1,) draw: {first:.6f}; replayed after other traffic: "
      f"{replay:.6f}; identical: {first == replay}")
