"""Yule-Simpson formulas for mixtures and coherent superpositions.

Two reversal mechanisms are computed side by side for a common Scenario:

* quantum-classical: aggregate probabilities p, q over the classical
  mixtures rho_alpha, rho_beta, with the reversal condition rewritten as
  a threshold on cos^2(beta);
* quantum-quantum: probabilities P, Q on the coherent superpositions
  |psi_alpha>, |psi_beta>, where interference terms enter, plus the
  lambda-interpolated family bridging the two.

Note on phases: with the stored convention <psi1|Pi_j|psi2> =
kappa_j e^{-i phi_j} the interference term of the superposition
expectation works out to kappa_j cos(phi_gamma + phi_j) sin(2 gamma);
the normalization uses kappa_psi cos(phi_gamma - phi_kappa).  Both are
cross-checked against direct state-vector expectations in the tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import LurkingVars, PureState, Scenario

# Superpositions with normalization below this are numerically unstable
# (near-total destructive interference) and are rejected.
DEGENERATE_NORM_CUTOFF = 1e-10


class DegenerateSuperpositionError(ValueError):
    """Destructive interference leaves no usable normalized state."""


class DegenerateConditionError(ValueError):
    """q1 = q2 makes the cos^2(beta) threshold form undefined."""


@dataclass(frozen=True)
class QCResult:
    """Mixture probabilities and the threshold data of the reversal condition."""

    p: float
    q: float
    occurs: bool
    threshold_T: float | None
    coeff_a: float | None
    coeff_b: float | None


@dataclass(frozen=True)
class QQResult:
    """Superposition probabilities with their normalizations."""

    P: float
    Q: float
    occurs: bool
    N_alpha: float
    N_beta: float


@dataclass(frozen=True)
class LambdaResult:
    lam: float
    P_lambda: float
    Q_lambda: float
    occurs: bool
    lambda_th: float | None
    persistence: tuple[float, float] | None


@dataclass(frozen=True)
class Classification:
    category: str  # BOTH | QC_ONLY | QQ_ONLY | NEITHER
    ratio_pq: float  # nan when q == 0
    ratio_PQ: float  # nan when Q == 0
    premise: str  # strict | weak | violated


def mixture_probability(weights_cos2: float, x1: float, x2: float) -> float:
    return weights_cos2 * x1 + (1.0 - weights_cos2) * x2


def qc_probabilities(s: Scenario, v: LurkingVars) -> QCResult:
    """Aggregate probabilities over rho_alpha (for A) and rho_beta (for B)."""
    ca, cb = math.cos(v.alpha) ** 2, math.cos(v.beta) ** 2
    p = mixture_probability(ca, s.p1, s.p2)
    q = mixture_probability(cb, s.q1, s.q2)
    if abs(s.q1 - s.q2) > 1e-12:
        coeff_a = (s.p1 - s.p2) / (s.q1 - s.q2)
        coeff_b = (s.p2 - s.q2) / (s.q1 - s.q2)
        threshold = coeff_a * ca + coeff_b
    else:
        coeff_a = coeff_b = threshold = None
    return QCResult(p=p, q=q, occurs=p < q, threshold_T=threshold, coeff_a=coeff_a, coeff_b=coeff_b)


def qc_condition_threshold(s: Scenario, alpha: float) -> tuple[float, float, float, str]:
    """Threshold form of the reversal condition: occurs iff cos^2(beta) >< T.

    Returns (coeff_a, coeff_b, T, direction) with direction "greater" when
    q1 > q2 and "less" when q1 < q2 (the inequality flips on division).
    """
    if abs(s.q1 - s.q2) <= 1e-12:
        raise DegenerateConditionError("q1 = q2: condition is independent of beta")
    coeff_a = (s.p1 - s.p2) / (s.q1 - s.q2)
    coeff_b = (s.p2 - s.q2) / (s.q1 - s.q2)
    threshold = coeff_a * math.cos(alpha) ** 2 + coeff_b
    direction = "greater" if s.q1 > s.q2 else "less"
    return coeff_a, coeff_b, threshold, direction


def superposition_normalization(s: Scenario, gamma: float, phi_gamma: float) -> float:
    return 1.0 + s.kappa_psi * math.cos(phi_gamma - s.phi_kappa) * math.sin(2.0 * gamma)


def superposition_state(s: Scenario, gamma: float, phi_gamma: float) -> tuple[PureState, float]:
    """Normalized cos(gamma)|psi1> + e^{-i phi_gamma} sin(gamma)|psi2>."""
    n_gamma = superposition_normalization(s, gamma, phi_gamma)
    if n_gamma <= DEGENERATE_NORM_CUTOFF:
        raise DegenerateSuperpositionError(
            f"normalization {n_gamma:.3e} below cutoff {DEGENERATE_NORM_CUTOFF:.0e}"
        )
    amps = (
        math.cos(gamma) * s.psi1.amplitudes
        + cmath.exp(-1j * phi_gamma) * math.sin(gamma) * s.psi2.amplitudes
    ) / math.sqrt(n_gamma)
    # renormalize away the last ulp so PureState's norm check is exact
    amps = amps / np.linalg.norm(amps)
    return PureState(amps), n_gamma


def _superposition_probability(
    s: Scenario, mixture: float, kappa: float, phi: float, gamma: float, phi_gamma: float
) -> tuple[float, float]:
    n_gamma = superposition_normalization(s, gamma, phi_gamma)
    if n_gamma <= DEGENERATE_NORM_CUTOFF:
        raise DegenerateSuperpositionError(
            f"normalization {n_gamma:.3e} below cutoff {DEGENERATE_NORM_CUTOFF:.0e}"
        )
    numerator = mixture + kappa * math.cos(phi_gamma + phi) * math.sin(2.0 * gamma)
    return numerator / n_gamma, n_gamma


def qq_probabilities(s: Scenario, v: LurkingVars) -> QQResult:
    """Closed-form P and Q on the two coherent superpositions."""
    p = mixture_probability(math.cos(v.alpha) ** 2, s.p1, s.p2)
    q = mixture_probability(math.cos(v.beta) ** 2, s.q1, s.q2)
    P, n_alpha = _superposition_probability(s, p, s.kappa_a, s.phi_a, v.alpha, v.phi_alpha)
    Q, n_beta = _superposition_probability(s, q, s.kappa_b, s.phi_b, v.beta, v.phi_beta)
    return QQResult(P=P, Q=Q, occurs=P < Q, N_alpha=n_alpha, N_beta=n_beta)


def lambda_threshold(p: float, q: float, P: float, Q: float) -> float | None:
    """Sign-change point of lambda*(P-Q) + (1-lambda)*(p-q), when defined."""
    if p == q:
        return None
    denom = 1.0 - (P - Q) / (p - q)
    if denom == 0.0 or not math.isfinite(denom):
        return None
    return 1.0 / denom


def lambda_family(s: Scenario, v: LurkingVars, lam: float) -> LambdaResult:
    """Partially coherent interpolation between the mixture and superposition."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda = {lam} outside [0, 1]")
    qc = qc_probabilities(s, v)
    qq = qq_probabilities(s, v)
    p_lam = lam * qq.P + (1.0 - lam) * qc.p
    q_lam = lam * qq.Q + (1.0 - lam) * qc.q
    th = lambda_threshold(qc.p, qc.q, qq.P, qq.Q)
    diff0 = qc.p - qc.q
    diff1 = qq.P - qq.Q
    if th is not None:
        if diff0 > diff1:
            lo, hi = th, 1.0
        else:
            lo, hi = 0.0, th
        lo, hi = max(lo, 0.0), min(hi, 1.0)
        persistence = (lo, hi) if lo < hi else None
    elif diff0 == diff1:
        # difference is constant in lambda
        persistence = (0.0, 1.0) if diff0 < 0.0 else None
    elif diff0 == 0.0:
        # P_lambda - Q_lambda = lambda * (P - Q): sign fixed for lambda > 0
        persistence = (0.0, 1.0) if diff1 < 0.0 else None
    else:
        persistence = None
    return LambdaResult(
        lam=lam, P_lambda=p_lam, Q_lambda=q_lam, occurs=p_lam < q_lam,
        lambda_th=th, persistence=persistence,
    )


def classify(s: Scenario, v: LurkingVars) -> Classification:
    """Four-way category from the (p<q, P<Q) pair, with the premise recorded."""
    qc = qc_probabilities(s, v)
    qq = qq_probabilities(s, v)
    if qc.occurs and qq.occurs:
        category = "BOTH"
    elif qc.occurs:
        category = "QC_ONLY"
    elif qq.occurs:
        category = "QQ_ONLY"
    else:
        category = "NEITHER"
    if s.strict_premise:
        premise = "strict"
    elif s.weak_premise:
        premise = "weak"
    else:
        premise = "violated"
    ratio_pq = qc.p / qc.q if qc.q != 0.0 else math.nan
    ratio_PQ = qq.P / qq.Q if qq.Q != 0.0 else math.nan
    return Classification(category=category, ratio_pq=ratio_pq, ratio_PQ=ratio_PQ, premise=premise)
