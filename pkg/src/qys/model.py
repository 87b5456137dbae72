"""Domain model: pure states, binary POVM effects and the derived scenario.

A Scenario bundles the two preparations and the two effects together with
every scalar the Yule-Simpson formulas consume: the per-preparation click
probabilities p_j, q_j, the state overlap kappa_psi e^{i phi_kappa} and
the cross matrix elements kappa_j e^{-i phi_j}.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import ALG_TOL, DimensionError

# Below this magnitude a phase carries no information; it is pinned to 0
# to keep atan2 noise out of downstream trigonometry.
PHASE_CUTOFF = 1e-14

TWO_PI = 2.0 * math.pi


class PositivityError(ValueError):
    """Effect fails the POVM-element constraints."""


class NormalizationError(ValueError):
    """State vector is not normalized."""


def _mod_2pi(phi: float) -> float:
    return phi % TWO_PI


def _polar(z: complex) -> tuple[float, float]:
    """Magnitude and phase in [0, 2pi), with the near-zero phase pinned to 0."""
    kappa = abs(z)
    if kappa < PHASE_CUTOFF:
        return kappa, 0.0
    return kappa, _mod_2pi(cmath.phase(z))


@dataclass(frozen=True, eq=False)
class PureState:
    """A unit-norm preparation |psi> in dimension 2 or 3."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = linalg.as_vector(self.amplitudes)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > ALG_TOL:
            raise NormalizationError(f"state norm {norm} differs from 1 by more than {ALG_TOL:.0e}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return len(self.amplitudes)

    @classmethod
    def from_qubit_angles(cls, theta: float, phi: float) -> "PureState":
        """cos(theta)|0> + e^{i phi} sin(theta)|1>."""
        return cls(np.array([math.cos(theta), cmath.exp(1j * phi) * math.sin(theta)]))


@dataclass(frozen=True, eq=False)
class Effect:
    """A binary-POVM element: Hermitian with spectrum inside [0, 1]."""

    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_hermitian(self.matrix)
        evals = linalg.eigenvalues(m)
        if evals[0] < -ALG_TOL or evals[-1] > 1.0 + ALG_TOL:
            raise PositivityError(f"effect spectrum {evals} leaves [0, 1]")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return linalg.eigenvalues(self.matrix)

    @classmethod
    def from_bloch(cls, a: float, r) -> "Effect":
        """Qubit effect (a*I + r.sigma)/2 under the |r| <= a <= 2-|r| constraint."""
        rv = np.asarray(r, dtype=float)
        if rv.shape != (3,):
            raise DimensionError(f"Bloch vector must have 3 components, got shape {rv.shape}")
        rnorm = float(np.linalg.norm(rv))
        if rnorm > a + ALG_TOL:
            raise PositivityError(f"|r| = {rnorm} > a = {a}")
        if a > 2.0 - rnorm + ALG_TOL:
            raise PositivityError(f"a = {a} > 2 - |r| = {2.0 - rnorm}")
        m = 0.5 * (a * np.eye(2, dtype=complex) + sum(rv[k] * linalg.PAULI[k] for k in range(3)))
        return cls(m)

    @classmethod
    def projector(cls, state: PureState) -> "Effect":
        return cls(np.outer(state.amplitudes, state.amplitudes.conj()))


@dataclass(frozen=True)
class LurkingVars:
    """Mixing/superposition weights alpha, beta and relative phases."""

    alpha: float
    beta: float
    phi_alpha: float = 0.0
    phi_beta: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not 0.0 <= v <= math.pi / 2:
                raise ValueError(f"{name} = {v} outside [0, pi/2]")
        object.__setattr__(self, "phi_alpha", _mod_2pi(self.phi_alpha))
        object.__setattr__(self, "phi_beta", _mod_2pi(self.phi_beta))


@dataclass(frozen=True, eq=False)
class Scenario:
    """Two preparations, two effects, and every derived scalar.

    Phase conventions: <psi1|psi2> = kappa_psi e^{+i phi_kappa} and
    <psi1|Pi_j|psi2> = kappa_j e^{-i phi_j}, all kappas >= 0 and all
    phases reduced to [0, 2pi).
    """

    psi1: PureState
    psi2: PureState
    pi_a: Effect
    pi_b: Effect
    p1: float = field(init=False)
    p2: float = field(init=False)
    q1: float = field(init=False)
    q2: float = field(init=False)
    kappa_psi: float = field(init=False)
    phi_kappa: float = field(init=False)
    kappa_a: float = field(init=False)
    phi_a: float = field(init=False)
    kappa_b: float = field(init=False)
    phi_b: float = field(init=False)
    strict_premise: bool = field(init=False)
    weak_premise: bool = field(init=False)

    def __post_init__(self):
        dims = {self.psi1.dim, self.psi2.dim, self.pi_a.dim, self.pi_b.dim}
        if len(dims) != 1:
            raise DimensionError(f"scenario constituents have mixed dimensions {dims}")
        set_ = object.__setattr__
        set_(self, "p1", linalg.expect(self.pi_a.matrix, self.psi1.amplitudes))
        set_(self, "p2", linalg.expect(self.pi_a.matrix, self.psi2.amplitudes))
        set_(self, "q1", linalg.expect(self.pi_b.matrix, self.psi1.amplitudes))
        set_(self, "q2", linalg.expect(self.pi_b.matrix, self.psi2.amplitudes))
        kappa, phase = _polar(linalg.inner(self.psi1.amplitudes, self.psi2.amplitudes))
        set_(self, "kappa_psi", kappa)
        set_(self, "phi_kappa", phase)
        for name, effect in (("a", self.pi_a), ("b", self.pi_b)):
            elem = linalg.cross_matrix_element(
                effect.matrix, self.psi1.amplitudes, self.psi2.amplitudes
            )
            kappa, phase = _polar(elem)
            set_(self, f"kappa_{name}", kappa)
            # stored with the e^{-i phi} sign convention
            set_(self, f"phi_{name}", _mod_2pi(-phase) if kappa >= PHASE_CUTOFF else 0.0)
        set_(self, "strict_premise", self.p1 > self.q1 and self.p2 > self.q2)
        set_(self, "weak_premise", self.p1 >= self.q1 - ALG_TOL and self.p2 >= self.q2 - ALG_TOL)

    @property
    def dim(self) -> int:
        return self.psi1.dim


def build_scenario(psi1: PureState, psi2: PureState, pi_a: Effect, pi_b: Effect) -> Scenario:
    return Scenario(psi1=psi1, psi2=psi2, pi_a=pi_a, pi_b=pi_b)


def _complex_pairs(arr: np.ndarray) -> list[list[float]]:
    flat = np.asarray(arr, dtype=complex).ravel(order="C")
    return [[float(z.real), float(z.imag)] for z in flat]


def _from_pairs(pairs, shape) -> np.ndarray:
    flat = np.array([complex(re, im) for re, im in pairs])
    return flat.reshape(shape, order="C")


def scenario_to_dict(s: Scenario) -> dict:
    """JSON-safe document; derived scalars are recomputed on load, never stored."""
    d = s.dim
    return {
        "dim": d,
        "psi1": _complex_pairs(s.psi1.amplitudes),
        "psi2": _complex_pairs(s.psi2.amplitudes),
        "piA": _complex_pairs(s.pi_a.matrix),
        "piB": _complex_pairs(s.pi_b.matrix),
    }


def scenario_from_dict(doc: dict) -> Scenario:
    d = int(doc["dim"])
    if d not in (2, 3):
        raise DimensionError(f"dim must be 2 or 3, got {d}")
    psi1 = PureState(_from_pairs(doc["psi1"], (d,)))
    psi2 = PureState(_from_pairs(doc["psi2"], (d,)))
    pi_a = Effect(_from_pairs(doc["piA"], (d, d)))
    pi_b = Effect(_from_pairs(doc["piB"], (d, d)))
    return build_scenario(psi1, psi2, pi_a, pi_b)


def save_scenario(s: Scenario, path) -> None:
    with open(path, "w") as fh:
        json.dump(scenario_to_dict(s), fh, indent=2)
        fh.write("\n")


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        return scenario_from_dict(json.load(fh))
