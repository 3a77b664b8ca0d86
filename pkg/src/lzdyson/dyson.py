"""Time-ordered series for the interaction-picture amplitude at tau = +inf.

With ``a(-inf) = 1`` only even orders of the time-ordered exponential
reach the first component, and

    a(+inf) = sum_n (-gamma)^n T_2n,
    T_2n = int dt_1 e^{-i t_1^2} int^{t_1} dt_2 e^{+i t_2^2} ... int^{t_{2n-1}} dt_2n e^{+i t_2n^2}.

The closed form is ``T_2n = (pi/2)^n / n!``.  This module evaluates the
nested integrals numerically, checks the frequency-domain reduction to an
ordered integral of identical kernels, and resums the series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import ParameterError, check_gamma
from .quadrature import cumulative_simpson_complex
from .special import RegularizedTheta

DEFAULT_WINDOW = 30.0
DEFAULT_GRID_POINTS = 200_000
DEFAULT_AVERAGING_WINDOWS = 8
MIN_GRID_POINTS = 10_000
MAX_PHASE_PER_CELL = 0.5


class ResolutionError(ValueError):
    """Grid too coarse for the oscillating kernels."""


@dataclass(frozen=True)
class DysonTerm:
    n: int
    numeric: complex
    analytic: float
    window: float
    grid_points: int

    @property
    def abs_error(self) -> float:
        return abs(self.numeric - self.analytic)

    @property
    def rel_error(self) -> float:
        return self.abs_error / self.analytic


@dataclass(frozen=True)
class SeriesSum:
    gamma: float
    orders: int
    partial_sums: list[float] = field(repr=False)
    limit: float

    @property
    def value(self) -> float:
        return self.partial_sums[-1]

    @property
    def abs_error(self) -> float:
        return abs(self.value - self.limit)

    def term_magnitude(self, k: int) -> float:
        """``|(-gamma)^k T_2k|``."""
        x = 0.5 * math.pi * self.gamma
        return math.exp(k * math.log(x) - math.lgamma(k + 1)) if x > 0 else float(k == 0)


def dyson_term_analytic(n: int) -> float:
    if n < 0:
        raise ParameterError("order must be >= 0")
    return (0.5 * math.pi) ** n / math.factorial(n)


def _nested_alternating(n: int, T: float, grid_points: int, swap: bool) -> complex:
    t = np.linspace(-T, T, grid_points)
    h = t[1] - t[0]
    plus = np.exp(1j * t * t)
    minus = np.conj(plus)
    if swap:
        plus, minus = minus, plus
    G = np.ones_like(plus)
    # innermost variable carries e^{+i t^2}, then alternate outward
    for level in range(2 * n):
        kernel = plus if level % 2 == 0 else minus
        G = cumulative_simpson_complex(kernel * G, h)
    return complex(G[-1])


def dyson_term_numeric(
    n: int,
    window: float = DEFAULT_WINDOW,
    grid_points: int = DEFAULT_GRID_POINTS,
    averaging_windows: int = DEFAULT_AVERAGING_WINDOWS,
    swap_kernels: bool = False,
    expensive: bool = False,
) -> complex:
    """Nested cumulative quadrature of ``T_2n`` on ``[-T, T]``, averaged over ``T``.

    The truncated integrals oscillate in ``T`` with period ``pi/T`` (the
    Fresnel endpoint phase ``e^{i T^2}``); the result is the mean over
    ``averaging_windows`` equally spaced ``T`` values covering one period.
    ``swap_kernels`` puts ``e^{+i t^2}`` on the outermost variable, which gives
    the complex conjugate.  Orders above 2 require ``expensive=True``.
    """
    if n not in (1, 2) and not (expensive and n == 3):
        raise ParameterError(f"order n={n} unsupported (1, 2; 3 with expensive=True)")
    if not (window > 0 and math.isfinite(window)):
        raise ParameterError(f"window must be > 0, got {window!r}")
    if grid_points < MIN_GRID_POINTS:
        raise ParameterError(f"grid_points must be >= {MIN_GRID_POINTS}")
    if averaging_windows < 1:
        raise ParameterError("averaging_windows must be >= 1")
    period = math.pi / window
    windows = window + period * np.arange(averaging_windows) / averaging_windows
    T_max = windows[-1]
    cell = 2 * T_max / (grid_points - 1)
    if 2 * T_max * cell > MAX_PHASE_PER_CELL:
        raise ResolutionError(
            f"phase advance per cell {2 * T_max * cell:.3g} rad exceeds {MAX_PHASE_PER_CELL}"
        )
    vals = [_nested_alternating(n, float(T), grid_points, swap_kernels) for T in windows]
    return complex(np.mean(vals))


def dyson_term(n: int, **kwargs) -> DysonTerm:
    numeric = dyson_term_numeric(n, **kwargs)
    return DysonTerm(
        n=n,
        numeric=numeric,
        analytic=dyson_term_analytic(n),
        window=kwargs.get("window", DEFAULT_WINDOW),
        grid_points=kwargs.get("grid_points", DEFAULT_GRID_POINTS),
    )


def ordered_integral(f: np.ndarray, n: int, dx: float) -> complex:
    """n-fold ordered integral ``int f(x1) int^{x1} f(x2) ... int^{x_{n-1}} f(xn)``."""
    G = np.ones_like(f)
    for _ in range(n):
        G = cumulative_simpson_complex(f * G, dx)
    return G[-1]


def identical_function_ordering_check(f_samples, n: int, dx: float = 1.0) -> tuple[float, float]:
    """Return ``(ordered, power)``: the n-fold ordered integral of ``f`` and ``(int f)^n / n!``.

    ``f_samples`` are values of a real function on a uniform grid of spacing ``dx``.
    """
    f = np.asarray(f_samples, dtype=float)
    if f.ndim != 1 or f.size < 3:
        raise ParameterError("f_samples must be a 1-d array with at least 3 samples")
    if n < 1:
        raise ParameterError("n must be >= 1")
    ordered = float(ordered_integral(f, n, dx))
    area = float(ordered_integral(f, 1, dx))
    return ordered, area**n / math.factorial(n)


def frequency_ordered_check(
    n: int, reg: RegularizedTheta = RegularizedTheta(), grid_points: int = 40_001
) -> complex:
    """``(1/2 pi i)^n`` times the frequency-ordered integral of n kernels ``1/(w - i eps)``.

    Integrated over ``[-Omega, Omega]`` in the variable ``u`` with
    ``w = eps sinh(u)``, in which each kernel becomes the smooth
    ``cosh u / (sinh u - i)``.  Tends to ``(1/2)^n / n!``.
    """
    if n not in (1, 2):
        raise ParameterError(f"order n={n} unsupported (1 or 2)")
    umax = math.asinh(reg.omega_window / reg.epsilon)
    u = np.linspace(-umax, umax, grid_points)
    sh = np.sinh(u)
    kernel = np.cosh(u) / (sh - 1j)
    return complex(ordered_integral(kernel, n, u[1] - u[0])) / (2j * math.pi) ** n


def series_sum(gamma: float, orders: int) -> SeriesSum:
    """Partial sums ``S_k = sum_{n<=k} (-gamma)^n (pi/2)^n / n!`` for ``k = 0..orders``."""
    gamma = check_gamma(gamma)
    if orders < 1:
        raise ParameterError("orders must be >= 1")
    x = -0.5 * math.pi * gamma
    terms = [1.0]
    for k in range(1, orders + 1):
        terms.append(terms[-1] * x / k)
    partial = [math.fsum(terms[: k + 1]) for k in range(orders + 1)]
    return SeriesSum(gamma, orders, partial, math.exp(x))
