"""Landau-Zener model definition and the interaction-picture transform.

Everything downstream works in dimensionless variables

    tau   = t * sqrt(alpha / hbar)
    gamma = coupling**2 / (hbar * alpha)

in which the lab-frame equation is ``i d(psi)/d(tau) = H(tau) psi`` with
``H = [[tau, sqrt(gamma)], [sqrt(gamma), -tau]]``.  The diagonal phase
transform ``U(tau) = diag(exp(i tau^2/2), exp(-i tau^2/2))`` removes the
sweep from the diagonal and leaves a purely off-diagonal generator whose
entries oscillate as ``exp(+-i tau^2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class ParameterError(ValueError):
    """Raised when a physical or dimensionless parameter is out of range."""


class Picture(enum.Enum):
    LAB = "lab"
    INTERACTION = "interaction"

    def other(self) -> "Picture":
        return Picture.INTERACTION if self is Picture.LAB else Picture.LAB


def check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma < 0:
        raise ParameterError(f"gamma must be finite and >= 0, got {gamma!r}")
    return gamma


@dataclass(frozen=True)
class SweepParameters:
    """Physical sweep: diagonal energies +-alpha*t, constant coupling."""

    alpha: float
    coupling: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "coupling", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.alpha <= 0:
            raise ParameterError(f"alpha must be > 0, got {self.alpha!r}")
        if self.hbar <= 0:
            raise ParameterError(f"hbar must be > 0, got {self.hbar!r}")
        if self.coupling < 0:
            raise ParameterError(f"coupling must be >= 0, got {self.coupling!r}")

    @property
    def gamma(self) -> float:
        return check_gamma(self.coupling**2 / (self.hbar * self.alpha))

    @property
    def time_scale(self) -> float:
        """Physical time corresponding to one unit of tau."""
        return math.sqrt(self.hbar / self.alpha)


@dataclass(frozen=True)
class SpinorState:
    a: complex
    b: complex
    picture: Picture = Picture.LAB

    @property
    def norm(self) -> float:
        return math.hypot(abs(self.a), abs(self.b))

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``tau_start + k*step`` for ``k = 0..n_steps``.

    The last node may overshoot ``tau_end`` by less than one step.
    """

    tau_start: float
    tau_end: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.tau_start) and math.isfinite(self.tau_end)):
            raise ParameterError("grid bounds must be finite")
        if not self.tau_start < self.tau_end:
            raise ParameterError(
                f"need tau_start < tau_end, got {self.tau_start} >= {self.tau_end}"
            )
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ParameterError(f"step must be > 0, got {self.step!r}")

    @classmethod
    def symmetric(cls, tau_max: float, step: float) -> "TimeGrid":
        return cls(-tau_max, tau_max, step)

    @property
    def n_steps(self) -> int:
        ratio = (self.tau_end - self.tau_start) / self.step
        # guard against 120/2e-3 = 60000.000000000007
        return max(1, math.ceil(ratio - 1e-9 * max(1.0, ratio)))

    def nodes(self) -> np.ndarray:
        return self.tau_start + self.step * np.arange(self.n_steps + 1)


def to_dimensionless(params: SweepParameters, t: float) -> tuple[float, float]:
    """Map physical time ``t`` to ``(tau, gamma)``."""
    return t / params.time_scale, params.gamma


def hamiltonian_lab(tau, gamma: float) -> np.ndarray:
    """Diabatic-basis Hamiltonian ``[[tau, g], [g, -tau]]`` with ``g = sqrt(gamma)``.

    ``tau`` may be an array, in which case a stack of shape ``tau.shape + (2, 2)``
    is returned.
    """
    g = math.sqrt(check_gamma(gamma))
    tau = np.asarray(tau, dtype=float)
    H = np.zeros(tau.shape + (2, 2), dtype=complex)
    H[..., 0, 0] = tau
    H[..., 1, 1] = -tau
    H[..., 0, 1] = g
    H[..., 1, 0] = g
    return H


def hamiltonian_interaction(tau, gamma: float) -> np.ndarray:
    """Interaction-picture generator ``g [[0, e^{i tau^2}], [e^{-i tau^2}, 0]]``.

    This is ``U H U^dagger + i (dU/dtau) U^dagger`` for the transform applied by
    :func:`picture_transform`, so a state evolved under it stays equal to the
    transformed lab-frame state.
    """
    g = math.sqrt(check_gamma(gamma))
    tau = np.asarray(tau, dtype=float)
    phase = np.exp(1j * tau * tau)
    H = np.zeros(tau.shape + (2, 2), dtype=complex)
    H[..., 0, 1] = g * phase
    H[..., 1, 0] = g * np.conj(phase)
    return H


def frame_phases(tau) -> np.ndarray:
    """Diagonal of ``U(tau)``: ``(exp(i tau^2/2), exp(-i tau^2/2))``."""
    tau = np.asarray(tau, dtype=float)
    p = np.exp(0.5j * tau * tau)
    return np.stack([p, np.conj(p)], axis=-1)


def frame_matrix(tau: float) -> np.ndarray:
    return np.diag(frame_phases(tau))


def picture_transform(state: SpinorState, tau: float) -> SpinorState:
    """Move ``state`` to the other picture at time ``tau``.

    Lab -> Interaction multiplies by ``U(tau)``; Interaction -> Lab by ``U(tau)^dagger``.
    """
    u0, u1 = frame_phases(tau)
    if state.picture is Picture.INTERACTION:
        u0, u1 = np.conj(u0), np.conj(u1)
    return SpinorState(complex(u0 * state.a), complex(u1 * state.b), state.picture.other())
