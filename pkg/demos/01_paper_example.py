"""Mutually exclusive events on a qubit: no classical-mixing reversal,
but a clear superposition reversal.

Pi_A = |0><0| and Pi_B = |1><1| are complementary projectors, so the
aggregate mixture probabilities always keep their order (p > q).  With a
suitable pair of superpositions, though, the order of P and Q flips.
"""

import math

from qys import Effect, LurkingVars, PureState, build_scenario
from qys import classify, qc_probabilities, qq_probabilities

psi1 = PureState.from_qubit_angles(0.0, 0.0)            # |0>
psi2 = PureState.from_qubit_angles(math.pi / 4, 0.0)    # (|0> + |1>)/sqrt(2)
pi_a = Effect.from_bloch(1.0, (0, 0, 1))                # |0><0|
pi_b = Effect.from_bloch(1.0, (0, 0, -1))               # |1><1|
scenario = build_scenario(psi1, psi2, pi_a, pi_b)

print(f"per-state probabilities: p = ({scenario.p1:.3f}, {scenario.p2:.3f}), "
      f"q = ({scenario.q1:.3f}, {scenario.q2:.3f})")

# the lurking variables: weights and relative phases of the superpositions
lurking = LurkingVars(alpha=math.pi / 2, beta=math.pi / 4,
                      phi_alpha=math.pi, phi_beta=math.pi)

qc = qc_probabilities(scenario, lurking)
qq = qq_probabilities(scenario, lurking)
print(f"mixtures:       p = {qc.p:.4f} > q = {qc.q:.4f}  (no reversal)")
print(f"superpositions: P = {qq.P:.4f} < Q = {qq.Q:.4f}  (reversal!)")
print("classification:", classify(scenario, lurking).category)
