"""Minimal complex linear algebra for dimension 2 and 3 Hilbert spaces.

Everything downstream (states, effects, probabilities) is built on the
handful of primitives here.  Matrices and vectors are plain numpy arrays;
the functions validate shapes and hermiticity instead of wrapping arrays
in bespoke classes.
"""

from __future__ import annotations

import numpy as np

# Tolerance for algebraic identities (hermiticity residues, imaginary
# parts of expectation values, eigenvalue bounds).
ALG_TOL = 1e-12
# Tolerance for validating external input (hermiticity drift before
# symmetrization, Bloch positivity slack).
INPUT_TOL = 1e-9

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (_PAULI_X, _PAULI_Y, _PAULI_Z)


class DimensionError(ValueError):
    """Operands have incompatible or unsupported dimensions."""


class HermiticityError(ValueError):
    """Matrix is too far from Hermitian to be symmetrized away."""


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1 or v.shape[0] not in (2, 3):
        raise DimensionError(f"expected a complex vector of length 2 or 3, got shape {v.shape}")
    return v


def as_hermitian(m) -> np.ndarray:
    """Validate and symmetrize a Hermitian matrix.

    Drift up to INPUT_TOL is silently absorbed by m <- (m + m^dag)/2;
    anything larger is rejected as non-physical input.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (2, 3):
        raise DimensionError(f"expected a 2x2 or 3x3 matrix, got shape {a.shape}")
    drift = np.max(np.abs(a - a.conj().T))
    if drift > INPUT_TOL:
        raise HermiticityError(f"matrix deviates from Hermitian by {drift:.3e} (> {INPUT_TOL:.0e})")
    return (a + a.conj().T) / 2.0


def _check_same_dim(*dims: int) -> None:
    if len(set(dims)) != 1:
        raise DimensionError(f"dimension mismatch: {dims}")


def inner(x, y) -> complex:
    """Inner product <x|y>, conjugate-linear in the first argument."""
    xv, yv = as_vector(x), as_vector(y)
    _check_same_dim(len(xv), len(yv))
    return complex(np.vdot(xv, yv))


def expect(m, x) -> float:
    """Expectation value <x|m|x> of a Hermitian matrix; guaranteed real."""
    mv = np.asarray(m, dtype=complex)
    xv = as_vector(x)
    _check_same_dim(mv.shape[0], mv.shape[1], len(xv))
    value = complex(np.vdot(xv, mv @ xv))
    if abs(value.imag) > ALG_TOL * max(1.0, abs(value.real)):
        raise HermiticityError(f"expectation has imaginary part {value.imag:.3e}")
    return value.real


def cross_matrix_element(m, x, y) -> complex:
    """Off-diagonal matrix element <x|m|y>."""
    mv = np.asarray(m, dtype=complex)
    xv, yv = as_vector(x), as_vector(y)
    _check_same_dim(mv.shape[0], mv.shape[1], len(xv), len(yv))
    return complex(np.vdot(xv, mv @ yv))


def eigenvalues(m) -> np.ndarray:
    """Real eigenvalues in ascending order.

    The 2x2 case is closed-form (exact up to rounding); the 3x3 case
    goes through LAPACK's Hermitian solver.
    """
    a = as_hermitian(m)
    if a.shape[0] == 2:
        half_trace = 0.5 * (a[0, 0].real + a[1, 1].real)
        # discriminant of the characteristic polynomial, always >= 0
        disc = 0.25 * (a[0, 0].real - a[1, 1].real) ** 2 + abs(a[0, 1]) ** 2
        radius = np.sqrt(max(disc, 0.0))
        return np.array([half_trace - radius, half_trace + radius])
    return np.linalg.eigvalsh(a)
