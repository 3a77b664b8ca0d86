"""The time-ordered series for the interaction-picture amplitude.

Odd products of the interaction generator are purely off-diagonal and even
ones purely diagonal, so only even orders contribute to a(+inf).  The
2n-fold ordered integrals of alternating Fresnel kernels come out as
(pi/2)^n / n!, and the series resums to exp(-pi gamma / 2).
"""

import math

import numpy as np

from lzdyson import dyson_term, dyson_term_numeric, hamiltonian_interaction, mat_mul, series_sum

# %% Parity of products of the interaction-picture generator.
rng = np.random.default_rng(0)
for k in range(1, 6):
    P = np.eye(2, dtype=complex)
    for t in rng.uniform(-3, 3, k):
        P = mat_mul(P, hamiltonian_interaction(t, 1.0))
    print(f"k={k}: |diag| = {np.abs(np.diag(P)).max():.2e}, |offdiag| = {abs(P[0, 1]):.2e}")

# %% Nested cumulative quadrature, averaged over one endpoint period in T.
for n in (1, 2):
    term = dyson_term(n)
    print(f"T_{2 * n}: numeric {term.numeric.real:.6f}{term.numeric.imag:+.1e}i"
          f"   closed form {term.analytic:.6f}   rel. error {term.rel_error:.1e}")

# %% Without averaging the truncated integral swings around the limit.
for T in (10.0, 10.1, 10.2, 10.3):
    print(f"T = {T:5.2f}: {dyson_term_numeric(1, window=T, averaging_windows=1).real:.5f}")

# %% Partial sums of sum_n (-gamma)^n T_2n.
s = series_sum(0.5, 12)
for k, v in enumerate(s.partial_sums):
    print(f"k={k:2d}  S_k = {v:+.10f}  error {abs(v - s.limit):.1e}")
print(f"exp(-pi/4) = {math.exp(-math.pi / 4):.10f}; squared = {math.exp(-math.pi / 2):.6f}")
