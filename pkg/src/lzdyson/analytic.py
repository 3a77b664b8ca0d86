"""Closed-form Landau-Zener asymptotics, used as the reference everywhere else."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import check_gamma


@dataclass(frozen=True)
class LZPrediction:
    gamma: float
    amplitude: float  # a(+inf) in the interaction picture, exp(-pi*gamma/2)
    survival: float  # |a(+inf)|^2
    transition: float


def lz_prediction(gamma: float) -> LZPrediction:
    gamma = check_gamma(gamma)
    amplitude = math.exp(-0.5 * math.pi * gamma)
    survival = math.exp(-math.pi * gamma)
    # -expm1 keeps full relative precision for small gamma
    return LZPrediction(gamma, amplitude, survival, -math.expm1(-math.pi * gamma))


def survival(gamma: float) -> float:
    return lz_prediction(gamma).survival
