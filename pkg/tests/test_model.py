import math

import numpy as np
import pytest

from qys import linalg
from qys.model import (
    Effect,
    LurkingVars,
    NormalizationError,
    PositivityError,
    PureState,
    build_scenario,
    load_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def paper_example_scenario():
    """psi1 = |0>, psi2 = |+>, Pi_A = |0><0|, Pi_B = |1><1|."""
    return build_scenario(
        PureState.from_qubit_angles(0.0, 0.0),
        PureState.from_qubit_angles(math.pi / 4, 0.0),
        Effect.from_bloch(1.0, (0, 0, 1)),
        Effect.from_bloch(1.0, (0, 0, -1)),
    )


class TestPureState:
    def test_angles_zero_gives_ground_state(self):
        s = PureState.from_qubit_angles(0.0, 0.0)
        assert s.amplitudes == pytest.approx([1, 0], abs=1e-12)

    def test_angles_pi_over_4(self):
        s = PureState.from_qubit_angles(math.pi / 4, 0.0)
        assert s.amplitudes == pytest.approx([INV_SQRT2, INV_SQRT2], abs=1e-12)

    def test_angles_excited_state_up_to_phase(self):
        s = PureState.from_qubit_angles(math.pi / 2, math.pi / 2)
        assert linalg.expect(np.diag([0, 1]), s.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            PureState([1.0, 1.0])


class TestEffect:
    def test_bloch_z_plus(self):
        e = Effect.from_bloch(1.0, (0, 0, 1))
        assert e.matrix == pytest.approx(np.diag([1.0, 0.0]), abs=1e-12)

    def test_bloch_z_minus(self):
        e = Effect.from_bloch(1.0, (0, 0, -1))
        assert e.matrix == pytest.approx(np.diag([0.0, 1.0]), abs=1e-12)

    def test_positivity_violation_names_inequality(self):
        with pytest.raises(PositivityError, match=r"\|r\|"):
            Effect.from_bloch(0.5, (0, 0, 0.8))

    def test_upper_bound_violation(self):
        with pytest.raises(PositivityError, match="2 - "):
            Effect.from_bloch(1.9, (0, 0, 0.5))

    def test_rejects_spectrum_outside_unit_interval(self):
        with pytest.raises(PositivityError):
            Effect(np.diag([1.5, 0.0]))

    def test_projective_iff_unit_bloch(self):
        e = Effect.from_bloch(1.0, (0.6, 0.0, 0.8))
        assert e.eigenvalues() == pytest.approx([0.0, 1.0], abs=1e-12)


class TestLurkingVars:
    def test_range_check(self):
        with pytest.raises(ValueError):
            LurkingVars(-0.1, 0.3)
        with pytest.raises(ValueError):
            LurkingVars(0.3, math.pi)

    def test_phases_wrap(self):
        v = LurkingVars(0.1, 0.2, 2 * math.pi + 0.5, -0.5)
        assert v.phi_alpha == pytest.approx(0.5, abs=1e-12)
        assert v.phi_beta == pytest.approx(2 * math.pi - 0.5, abs=1e-12)


class TestScenario:
    def test_paper_example_scalars(self, paper_example_scenario):
        s = paper_example_scenario
        assert s.p1 == pytest.approx(1.0, abs=1e-12)
        assert s.p2 == pytest.approx(0.5, abs=1e-12)
        assert s.q1 == pytest.approx(0.0, abs=1e-12)
        assert s.q2 == pytest.approx(0.5, abs=1e-12)
        assert s.kappa_psi == pytest.approx(INV_SQRT2, abs=1e-12)
        assert s.phi_kappa == pytest.approx(0.0, abs=1e-12)
        assert s.kappa_a == pytest.approx(INV_SQRT2, abs=1e-12)
        assert s.phi_a == pytest.approx(0.0, abs=1e-12)
        assert s.kappa_b == pytest.approx(0.0, abs=1e-12)
        # p2 = q2 = 1/2 exactly, so only the weak premise holds (up to
        # one-ulp rounding in the expectation values)
        assert s.weak_premise

    def test_identical_effects_never_strict(self):
        e = Effect(np.diag([0.4, 0.9]))
        psi = PureState([INV_SQRT2, INV_SQRT2])
        s = build_scenario(psi, psi, e, e)
        assert s.p1 == s.q1 and s.p2 == s.q2
        assert not s.strict_premise
        assert s.weak_premise

    def test_orthogonal_states_with_flat_effect(self):
        s = build_scenario(
            PureState([1, 0]),
            PureState([0, 1]),
            Effect(np.diag([1.0, 0.0])),
            Effect(0.3 * np.eye(2)),
        )
        assert s.p1 == pytest.approx(1.0, abs=1e-12)
        assert s.p2 == pytest.approx(0.0, abs=1e-12)
        assert s.q1 == pytest.approx(0.3, abs=1e-12)
        assert s.q2 == pytest.approx(0.3, abs=1e-12)
        assert s.kappa_psi == pytest.approx(0.0, abs=1e-12)
        assert not s.strict_premise  # p2 < q2

    def test_derived_scalars_recomputable(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            d = int(rng.choice([2, 3]))
            x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            psi1 = PureState(x / np.linalg.norm(x))
            psi2 = PureState(y / np.linalg.norm(y))
            effects = []
            for _ in range(2):
                evals = rng.uniform(0, 1, d)
                z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
                q, _ = np.linalg.qr(z)
                effects.append(Effect((q * evals) @ q.conj().T))
            s = build_scenario(psi1, psi2, *effects)
            assert s.p1 == pytest.approx(
                linalg.expect(s.pi_a.matrix, psi1.amplitudes), abs=1e-12)
            assert s.q2 == pytest.approx(
                linalg.expect(s.pi_b.matrix, psi2.amplitudes), abs=1e-12)
            # phase convention round trip: kappa e^{-i phi} is the element
            elem = linalg.cross_matrix_element(s.pi_a.matrix, psi1.amplitudes, psi2.amplitudes)
            assert s.kappa_a * np.exp(-1j * s.phi_a) == pytest.approx(elem, abs=1e-12)
            overlap = linalg.inner(psi1.amplitudes, psi2.amplitudes)
            assert s.kappa_psi * np.exp(1j * s.phi_kappa) == pytest.approx(overlap, abs=1e-12)

    def test_complementary_projectors_give_q_equals_1_minus_p(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            n = rng.standard_normal(3)
            n /= np.linalg.norm(n)
            pi_a = Effect.from_bloch(1.0, n)
            pi_b = Effect.from_bloch(1.0, -n)
            x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            s = build_scenario(PureState(x / np.linalg.norm(x)),
                               PureState(y / np.linalg.norm(y)), pi_a, pi_b)
            assert s.q1 == pytest.approx(1.0 - s.p1, abs=1e-12)
            assert s.q2 == pytest.approx(1.0 - s.p2, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(linalg.DimensionError):
            build_scenario(PureState([1, 0]), PureState([1, 0, 0]),
                           Effect(np.eye(2) * 0.5), Effect(np.eye(2) * 0.5))


class TestSerialization:
    def test_round_trip_preserves_derived_scalars(self, paper_example_scenario, tmp_path):
        path = tmp_path / "scenario.json"
        save_scenario(paper_example_scenario, path)
        loaded = load_scenario(path)
        for name in ("p1", "p2", "q1", "q2", "kappa_psi", "phi_kappa",
                     "kappa_a", "phi_a", "kappa_b", "phi_b"):
            assert getattr(loaded, name) == pytest.approx(
                getattr(paper_example_scenario, name), abs=1e-12)

    def test_document_shape(self, paper_example_scenario):
        doc = scenario_to_dict(paper_example_scenario)
        assert doc["dim"] == 2
        assert len(doc["psi1"]) == 2
        assert len(doc["piA"]) == 4  # row-major [re, im] pairs
        rebuilt = scenario_from_dict(doc)
        assert rebuilt.p1 == pytest.approx(paper_example_scenario.p1, abs=1e-12)
