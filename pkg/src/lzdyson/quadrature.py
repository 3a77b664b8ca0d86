"""Small quadrature toolkit: complex cumulative Simpson and panelled Gauss-Legendre."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import cumulative_simpson


def cumulative_simpson_complex(y: np.ndarray, dx: float) -> np.ndarray:
    """Running integral of samples ``y`` on a uniform grid, starting at 0.

    ``scipy.integrate.cumulative_simpson`` discards imaginary parts, so real
    and imaginary parts are integrated separately.
    """
    y = np.asarray(y)
    re = cumulative_simpson(y.real, dx=dx, initial=0.0)
    if not np.iscomplexobj(y):
        return re
    return re + 1j * cumulative_simpson(y.imag, dx=dx, initial=0.0)


@lru_cache(maxsize=8)
def _gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_nodes(edges: np.ndarray, order: int = 20):
    """Gauss-Legendre nodes and weights on consecutive panels ``edges[i]..edges[i+1]``."""
    x, w = _gauss_legendre(order)
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    nodes = (lo + hi) * 0.5 + half * x
    weights = half * w
    return nodes.ravel(), weights.ravel()


def graded_edges(start: float, stop: float, max_ratio: float = 2.0, max_width: float = math.inf):
    """Panel edges on ``[start, stop]`` (``0 < start < stop``) growing geometrically.

    Each panel is at most ``(max_ratio - 1) * left_edge`` wide and never wider
    than ``max_width``; once the width cap binds the panels are uniform.
    """
    if not 0 < start < stop:
        raise ValueError("graded_edges needs 0 < start < stop")
    edges = [start]
    x = start
    # geometric part
    while x < stop:
        width = (max_ratio - 1.0) * x
        if width >= max_width:
            break
        x = min(x + width, stop)
        edges.append(x)
    if x < stop:
        n = math.ceil((stop - x) / max_width)
        edges.extend(np.linspace(x, stop, n + 1)[1:].tolist())
    return np.array(edges)
