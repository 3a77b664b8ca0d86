"""Ingredients of the frequency-domain evaluation.

Completing the square uses the full-line Fresnel integral sqrt(pi) e^{i pi/4};
the ordering step functions are replaced by the regularized Fourier
representation, whose value at t = 0 is 1/2.  An ordered integral of n
identical functions collapses to (integral)^n / n!, which is what turns the
frequency-ordered integral into (1/2)^n / n!.
"""

import math

import numpy as np

from lzdyson import (
    RegularizedTheta,
    frequency_ordered_check,
    fresnel_e,
    identical_function_ordering_check,
    theta_halfvalue,
    theta_numeric,
)
from lzdyson.special import FRESNEL_LIMIT

# %% E(x) = int_0^x exp(i s^2) ds spirals into E(inf).
for x in (0.5, 1.0, 1.5, 3.0, 6.0, 50.0):
    print(f"E({x:5.1f}) = {fresnel_e(x):.10f}")
print(f"2 E(inf) = {2 * FRESNEL_LIMIT:.10f}, |2 E(inf)|^2 = {abs(2 * FRESNEL_LIMIT) ** 2:.10f} = pi")

# %% The regularized step function.
reg = RegularizedTheta(epsilon=1e-3, omega_window=1e4)
for t in (-2.0, -0.1, 0.0, 0.1, 2.0):
    print(f"Theta({t:+.1f}) = {theta_numeric(t, reg).real:.6f}")
print(f"half-value {theta_halfvalue(reg):.9f}, closed form {math.atan(1e7) / math.pi:.9f}")

# %% Ordered integrals of identical functions.
x = np.linspace(-8, 8, 8001)
f = np.exp(-x * x) * (1 + 0.3 * np.cos(x))
for n in (2, 3):
    ordered, power = identical_function_ordering_check(f, n, x[1] - x[0])
    print(f"n={n}: ordered {ordered:.10f}, (area)^n/n! {power:.10f}")

# %% Frequency-ordered integral of identical kernels 1/(w - i eps).
for n in (1, 2):
    v = frequency_ordered_check(n, reg)
    print(f"n={n}: {v.real:.8f}   target (1/2)^n/n! = {0.5 ** n / math.factorial(n):.8f}")
print("times pi^n (the Gaussian factors) gives T_2n = (pi/2)^n / n!")
