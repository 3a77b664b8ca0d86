"""Fresnel-type integral and the regularized step function.

``fresnel_e(x)`` is ``E(x) = int_0^x exp(i s^2) ds``; its full-line value
``2 E(inf) = sqrt(pi) exp(i pi/4)`` is the Gaussian factor that appears when
squares are completed in the time-ordered integrals.

The step function is represented as

    Theta(t) = 1/(2 pi i) int dw exp(i w t) / (w - i eps)

with the pole in the upper half plane, so that closing the contour above for
``t > 0`` picks up the residue and gives ``exp(-eps t) -> 1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ParameterError
from .quadrature import graded_edges, panel_nodes

FRESNEL_LIMIT = complex(math.sqrt(math.pi / 8), math.sqrt(math.pi / 8))
X_SWITCH = 4.0

_SERIES_CUTOFF = Fraction(1, 10**20)
_CF_TOL = 1e-16
_CF_MAX_TERMS = 2000
_SQRT_2 = math.sqrt(2.0)
_EIGHTH_TURN = cmath.exp(0.25j * math.pi)


def _exp_i_square(x: float) -> complex:
    """``exp(i x^2)`` with ``x^2`` carried as an exact hi+lo pair.

    Without the split the rounding of ``x*x`` alone costs ``~x^2 * 1e-16``
    radians of phase, which matters once ``x`` is in the hundreds.
    """
    hi = x * x
    # Veltkamp/Dekker product error
    c = 134217729.0 * x
    xh = c - (c - x)
    xl = x - xh
    lo = ((xh * xh - hi) + 2.0 * xh * xl) + xl * xl
    return cmath.exp(1j * hi) * cmath.exp(1j * lo)


def _fresnel_series(x: float) -> complex:
    """Taylor series ``sum_k i^k x^(2k+1) / (k! (2k+1))`` in exact rational arithmetic.

    Terms reach ~1e5 at ``x = 4`` while the sum is O(1), so floating
    accumulation would lose about five digits.
    """
    X = Fraction(x)
    X2 = X * X
    power = X  # x^(2k+1) / k!
    acc = [Fraction(0), Fraction(0)]  # real, imag
    k = 0
    while True:
        term = power / (2 * k + 1)
        sign = 1 if k % 4 < 2 else -1
        acc[k % 2] += sign * term
        if term < _SERIES_CUTOFF and k > X2:
            break
        k += 1
        power = power * X2 / k
    return complex(float(acc[0]), float(acc[1]))


def _fresnel_tail_cf(x: float) -> complex:
    """Large-argument branch ``E(inf) - (1/2) e^{i pi/4} e^{i x^2} / K(z)``.

    ``K`` is the Laplace continued fraction ``z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))``
    at ``z = x e^{-i pi/4}``, i.e. the convergent resummation of the asymptotic
    series ``E(inf) + e^{i x^2}/(2 i x) (1 + 1/(2 i x^2) + ...)``. Evaluated with
    the modified Lentz algorithm.
    """
    z = x * complex(1.0, -1.0) / _SQRT_2
    tiny = 1e-300
    f = z
    C = z
    D = 0j
    for n in range(1, _CF_MAX_TERMS):
        a = 0.5 * n
        D = z + a * D
        if D == 0:
            D = tiny
        D = 1.0 / D
        C = z + a / C
        if C == 0:
            C = tiny
        delta = C * D
        f *= delta
        if abs(delta - 1.0) < _CF_TOL:
            break
    return FRESNEL_LIMIT - 0.5 * _EIGHTH_TURN * _exp_i_square(x) / f


def _fresnel_scalar(x: float) -> complex:
    x = float(x)
    if not math.isfinite(x):
        if math.isinf(x):
            return FRESNEL_LIMIT if x > 0 else -FRESNEL_LIMIT
        raise ParameterError("fresnel_e argument must not be NaN")
    ax = abs(x)
    val = _fresnel_series(ax) if ax <= X_SWITCH else _fresnel_tail_cf(ax)
    return -val if x < 0 else val


def fresnel_e(x):
    """``int_0^x exp(i s^2) ds`` for scalar or array ``x``, absolute error below 1e-12."""
    if np.ndim(x) == 0:
        return _fresnel_scalar(x)
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape, dtype=complex)
    for idx, v in np.ndenumerate(x):
        out[idx] = _fresnel_scalar(v)
    return out


@dataclass(frozen=True)
class RegularizedTheta:
    """Regularization ``eps`` of the pole and truncation ``[-omega_window, omega_window]``."""

    epsilon: float = 1e-3
    omega_window: float = 1e4

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ParameterError(f"epsilon must be > 0, got {self.epsilon!r}")
        if not (math.isfinite(self.omega_window) and self.omega_window > 100 * self.epsilon):
            raise ParameterError("omega_window must be finite and exceed 100*epsilon")

    @property
    def core_halfwidth(self) -> float:
        return 100.0 * self.epsilon


_GL_ORDER = 20


def _core_integral(t: float, reg: RegularizedTheta) -> complex:
    """``int_{-d}^{d} e^{iwt}/(w - i eps) dw`` with ``w = eps sinh(u)``.

    The substitution flattens the Lorentzian core: the integrand becomes
    ``e^{i eps t sinh u} cosh u / (sinh u - i)``.
    """
    eps = reg.epsilon
    umax = math.asinh(reg.core_halfwidth / eps)
    # resolve both the O(1) core structure in u and the phase eps*t*sinh(u)
    n_panels = max(32, math.ceil(4 * reg.core_halfwidth * abs(t) / math.pi) + 32)
    u, w = panel_nodes(np.linspace(-umax, umax, n_panels + 1), _GL_ORDER)
    sh = np.sinh(u)
    vals = np.exp(1j * eps * t * sh) * np.cosh(u) / (sh - 1j)
    return complex(np.dot(w, vals))


def _wing_integral(t: float, reg: RegularizedTheta) -> complex:
    """``int_{d <= |w| <= Omega} e^{iwt}/(w - i eps) dw``, both wings folded onto ``w > 0``."""
    eps = reg.epsilon
    max_width = math.pi / (2 * abs(t)) if t != 0 else math.inf
    edges = graded_edges(reg.core_halfwidth, reg.omega_window, 2.0, max_width)
    w_nodes, weights = panel_nodes(edges, _GL_ORDER)
    ph = np.exp(1j * w_nodes * t)
    vals = ph / (w_nodes - 1j * eps) - np.conj(ph) / (w_nodes + 1j * eps)
    return complex(np.dot(weights, vals))


def theta_numeric(t: float, reg: RegularizedTheta = RegularizedTheta()) -> complex:
    """Truncated, regularized Fourier representation of the step function at ``t``.

    Tends to 1 for ``t > 0``, 0 for ``t < 0`` and 1/2 at ``t = 0``; for finite
    ``eps`` the ``t > 0`` value is ``exp(-eps t)`` up to a truncation error of
    order ``1/(Omega |t|)``.
    """
    t = float(t)
    total = _core_integral(t, reg) + _wing_integral(t, reg)
    return total / (2j * math.pi)


def theta_halfvalue(reg: RegularizedTheta = RegularizedTheta()) -> float:
    """Real part of ``1/(2 pi i) int dw / (w - i eps)`` over the window; tends to 1/2."""
    return theta_numeric(0.0, reg).real
