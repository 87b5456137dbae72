"""Partial coherence: sweep the mixture-to-superposition interpolation.

The interpolated probabilities are affine in the coherence weight, so the
reversal switches on or off at a single threshold value.
"""

import math

import numpy as np

from qys import Effect, LurkingVars, PureState, build_scenario, lambda_family

scenario = build_scenario(
    PureState.from_qubit_angles(0.0, 0.0),
    PureState.from_qubit_angles(math.pi / 4, 0.0),
    Effect.from_bloch(1.0, (0, 0, 1)),
    Effect.from_bloch(1.0, (0, 0, -1)),
)
lurking = LurkingVars(math.pi / 2, math.pi / 4, math.pi, math.pi)

print(" lambda   P_lambda   Q_lambda   reversal")
for lam in np.linspace(0, 1, 11):
    res = lambda_family(scenario, lurking, float(lam))
    mark = "  <-- occurs" if res.occurs else ""
    print(f"  {lam:4.1f}    {res.P_lambda:7.4f}    {res.Q_lambda:7.4f}{mark}")

res = lambda_family(scenario, lurking, 0.5)
print(f"\nthreshold coherence: lambda_th = {res.lambda_th:.4f}, "
      f"reversal persists on ({res.persistence[0]:.4f}, {res.persistence[1]:.4f})")
