"""Seeded random generation of scenarios and lurking variables.

Every draw flows from (seed, trial_index) through an independent
numpy SeedSequence substream, so parallel and serial runs produce
bit-identical streams.  The premise p_j > q_j is enforced by rejection,
with a starvation cap so over-constrained configs fail loudly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .model import Effect, LurkingVars, PureState, Scenario, build_scenario

MEASURES = ("haar", "param-uniform")
EFFECT_MODES = ("general", "projective-only")
PREMISES = ("strict", "weak")

WEAK_PREMISE_TOL = 1e-12


class SamplingStarvationError(RuntimeError):
    """Rejection sampling exceeded the per-trial cap."""


class UnsupportedMeasureError(ValueError):
    """Requested measure is not defined for the requested dimension."""


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    dim: int = 2
    measure: str = "haar"
    effects: str = "general"
    premise: str = "strict"
    equal_mixing: bool = False
    max_rejections_per_trial: int = 10000

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")
        if self.measure not in MEASURES:
            raise ValueError(f"measure must be one of {MEASURES}, got {self.measure!r}")
        if self.effects not in EFFECT_MODES:
            raise ValueError(f"effects must be one of {EFFECT_MODES}, got {self.effects!r}")
        if self.premise not in PREMISES:
            raise ValueError(f"premise must be one of {PREMISES}, got {self.premise!r}")
        if self.measure == "param-uniform" and self.dim != 2:
            raise UnsupportedMeasureError("param-uniform measure is defined for qubits only")
        if self.max_rejections_per_trial < 1:
            raise ValueError("max_rejections_per_trial must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "SampleConfig":
        return cls(**doc)

    @classmethod
    def from_json_file(cls, path) -> "SampleConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Independent substream for one trial, derived from (seed, trial_index)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial_index,)))


def _haar_state(dim: int, rng: np.random.Generator) -> PureState:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(z / np.linalg.norm(z))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    # fix the phase ambiguity of QR so the distribution is Haar
    return q * (np.diag(r) / np.abs(np.diag(r)))


def sample_state(config: SampleConfig, rng: np.random.Generator) -> PureState:
    if config.measure == "haar":
        return _haar_state(config.dim, rng)
    theta = rng.uniform(0.0, math.pi / 2)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return PureState.from_qubit_angles(theta, phi)


def _uniform_sphere(rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def sample_effect(config: SampleConfig, rng: np.random.Generator) -> Effect:
    if config.dim == 2:
        if config.effects == "projective-only":
            return Effect.from_bloch(1.0, _uniform_sphere(rng))
        # uniform (a, r) over the positivity cone |r| <= a <= 2 - |r|,
        # realized by rejection from the bounding box
        while True:
            a = rng.uniform(0.0, 2.0)
            r = rng.uniform(-1.0, 1.0, size=3)
            rnorm = float(np.linalg.norm(r))
            if rnorm <= a <= 2.0 - rnorm:
                return Effect.from_bloch(a, r)
    if config.effects == "projective-only":
        return Effect.projector(_haar_state(3, rng))
    u = haar_unitary(3, rng)
    evals = rng.uniform(0.0, 1.0, size=3)
    return Effect((u * evals) @ u.conj().T)


def sample_lurking(config: SampleConfig, rng: np.random.Generator) -> LurkingVars:
    phi_alpha = rng.uniform(0.0, 2.0 * math.pi)
    phi_beta = rng.uniform(0.0, 2.0 * math.pi)
    if config.equal_mixing:
        return LurkingVars(math.pi / 4, math.pi / 4, phi_alpha, phi_beta)
    alpha = rng.uniform(0.0, math.pi / 2)
    beta = rng.uniform(0.0, math.pi / 2)
    return LurkingVars(alpha, beta, phi_alpha, phi_beta)


def _premise_holds(s: Scenario, premise: str) -> bool:
    if premise == "strict":
        return s.strict_premise
    return s.weak_premise


def sample_scenario(config: SampleConfig, rng: np.random.Generator) -> tuple[Scenario, int]:
    """Draw (psi1, psi2, Pi_A, Pi_B) until the premise holds.

    Returns the accepted scenario and the number of rejected draws.
    """
    rejections = 0
    while True:
        s = build_scenario(
            sample_state(config, rng),
            sample_state(config, rng),
            sample_effect(config, rng),
            sample_effect(config, rng),
        )
        if _premise_holds(s, config.premise):
            return s, rejections
        rejections += 1
        if rejections >= config.max_rejections_per_trial:
            raise SamplingStarvationError(
                f"premise {config.premise!r} not met in {rejections} draws; "
                "config is likely over-constrained"
            )
