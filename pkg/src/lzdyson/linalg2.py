"""Closed-form 2x2 complex linear algebra.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` (or stacks ``(..., 2, 2)``).
"""

from __future__ import annotations

import numpy as np

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_TRACE_TOL = 1e-12
_HERMITIAN_TOL = 1e-12


class ContractError(ValueError):
    """Input matrix violates a documented precondition."""


def mat_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.matmul(A, B)


def dagger(A: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(A, -1, -2))


def pauli_components(H: np.ndarray):
    """Return ``(hx, hy, hz)`` with ``H = hx sx + hy sy + hz sz`` for traceless Hermitian ``H``."""
    H = np.asarray(H, dtype=complex)
    trace = H[..., 0, 0] + H[..., 1, 1]
    if np.any(np.abs(trace) > _TRACE_TOL):
        raise ContractError(f"generator must be traceless (|tr| up to {np.max(np.abs(trace)):.3g})")
    if np.any(np.abs(H - dagger(H)) > _HERMITIAN_TOL):
        raise ContractError("generator must be Hermitian")
    return H[..., 1, 0].real, H[..., 1, 0].imag, H[..., 0, 0].real


def exp_hermitian_step(H: np.ndarray, dtau) -> np.ndarray:
    """``exp(-i H dtau)`` for traceless Hermitian ``H`` via the Pauli closed form.

    With ``H = |h| n.sigma`` the result is ``cos(|h| dtau) I - i sin(|h| dtau) n.sigma``,
    which is unitary with unit determinant for any ``dtau``. Works on stacks of
    matrices; ``dtau`` broadcasts against the stack shape.
    """
    hx, hy, hz = pauli_components(H)
    norm = np.hypot(np.hypot(hx, hy), hz)
    theta = norm * dtau
    c = np.cos(theta)
    # sin(theta)/|h|, finite as |h| -> 0
    s_over = np.where(norm > 0, np.sin(theta) / np.where(norm > 0, norm, 1.0), 0.0)
    U = np.empty(np.shape(c) + (2, 2), dtype=complex)
    U[..., 0, 0] = c - 1j * s_over * hz
    U[..., 1, 1] = c + 1j * s_over * hz
    U[..., 0, 1] = -1j * s_over * (hx - 1j * hy)
    U[..., 1, 0] = -1j * s_over * (hx + 1j * hy)
    return U


def is_unitary(U: np.ndarray, tol: float = 1e-14) -> bool:
    return bool(np.all(np.abs(mat_mul(dagger(U), U) - IDENTITY) <= tol))
