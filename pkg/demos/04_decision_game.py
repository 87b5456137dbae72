"""Finite-run identification of an unknown measurement.

A black box performs one of two binary measurements.  Probing it with a
mix of two preparations, the per-preparation click counts identify the
measurement correctly, while the aggregated count can point the other
way: the relative sample sizes act as a lurking variable.
"""

import math

import numpy as np

from qys.experiments import exact_disagreement_probability, run_hyptest
from qys.model import Effect, LurkingVars, PureState, build_scenario
from qys.sampling import trial_rng

# psi1 = |0>, psi2 = |1>, diagonal effects: per-state probabilities
# (0.8, 0.3) for measurement A and (0.7, 0.2) for B -- A always wins
scenario = build_scenario(
    PureState([1, 0]), PureState([0, 1]),
    Effect(np.diag([0.8, 0.3])), Effect(np.diag([0.7, 0.2])),
)

# aggregate models weight psi1 by 0.1 (for A) and 0.9 (for B); these
# weights satisfy the mixture reversal condition: p = 0.35 < q = 0.65
lurking = LurkingVars(math.acos(math.sqrt(0.1)), math.acos(math.sqrt(0.9)))

# the box performs A; the probe stream happens to use psi1 90% of the time
exact = exact_disagreement_probability(scenario, lurking, M=200, truth="A", run_frac1=0.9)
outcomes, rate = run_hyptest(scenario, lurking, M=200, repeats=10000,
                             rng=trial_rng(0, 0), truth="A", run_frac1=0.9)

print(f"exact disagreement probability:     {exact:.4f}")
print(f"simulated rate over 10^4 repeats:   {rate:.4f}")
sample = outcomes[0]
print(f"\nexample repeat: k1 = {sample.k1}/{sample.M1}, k2 = {sample.k2}/{sample.M2}")
print(f"  partitioned analysis says: {sample.decision_partitioned}")
print(f"  aggregated analysis says:  {sample.decision_aggregated}")
