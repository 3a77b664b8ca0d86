"""Numerical Landau-Zener sweep: exact propagation, time-ordered Dyson terms and their closed form."""

from .analytic import LZPrediction, lz_prediction
from .core import (
    ParameterError,
    Picture,
    SpinorState,
    SweepParameters,
    TimeGrid,
    hamiltonian_interaction,
    hamiltonian_lab,
    picture_transform,
    to_dimensionless,
)
from .dyson import (
    DysonTerm,
    ResolutionError,
    SeriesSum,
    dyson_term,
    dyson_term_analytic,
    dyson_term_numeric,
    frequency_ordered_check,
    identical_function_ordering_check,
    series_sum,
)
from .linalg2 import ContractError, exp_hermitian_step, mat_mul
from .propagator import Method, SurvivalResult, Trajectory, evolve, survival_probability
from .special import RegularizedTheta, fresnel_e, theta_halfvalue, theta_numeric

__version__ = "0.1.0"
