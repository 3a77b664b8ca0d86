"""Invariant checks for every module, run by ``lz-dyson verify``.

Each check returns ``(passed, detail)``.  Checks are grouped by module so a
subset can be selected; propagator checks take the step and window from the
run settings, which is how a deliberately coarse step can be injected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import analytic, core, dyson, linalg2, propagator, special

GROUPS = ("core_model", "linalg2", "propagator", "special", "dyson", "analytic")


@dataclass
class Settings:
    step: float = propagator.DEFAULT_STEP
    tau_max: float = propagator.DEFAULT_TAU_MAX
    gamma: float = 0.5
    epsilon: float = 1e-3
    omega: float = 1e4
    window: float = dyson.DEFAULT_WINDOW
    grid: int = dyson.DEFAULT_GRID_POINTS
    seed: int = 12345

    @property
    def reg(self) -> special.RegularizedTheta:
        return special.RegularizedTheta(self.epsilon, self.omega)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


_REGISTRY: dict[str, list[tuple[str, Callable[[Settings], tuple[bool, str]]]]] = {
    g: [] for g in GROUPS
}


def check(group: str, name: str):
    def register(fn):
        _REGISTRY[group].append((f"{group}.{name}", fn))
        return fn

    return register


def _random_points(s: Settings, n: int = 100):
    rng = np.random.default_rng(s.seed)
    return rng.uniform(-20, 20, n), rng.uniform(0, 4, n)


# -- core_model ---------------------------------------------------------------


@check("core_model", "hermitian")
def _hermitian(s):
    taus, gammas = _random_points(s)
    worst = 0.0
    for t, g in zip(taus, gammas):
        for H in (core.hamiltonian_lab(t, g), core.hamiltonian_interaction(t, g)):
            worst = max(worst, float(np.max(np.abs(H - linalg2.dagger(H)))))
    return worst <= 1e-15, f"max |H - H^dagger| = {worst:.2e}"


@check("core_model", "structure")
def _structure(s):
    taus, gammas = _random_points(s)
    H = core.hamiltonian_lab(taus, 1.0)
    Hi = core.hamiltonian_interaction(taus, 1.0)
    tr = float(np.max(np.abs(H[:, 0, 0] + H[:, 1, 1])))
    diag = float(np.max(np.abs(Hi[:, [0, 1], [0, 1]])))
    return tr == 0.0 and diag == 0.0, f"max |tr H| = {tr}, max |diag H_int| = {diag}"


@check("core_model", "frame_identity")
def _frame_identity(s):
    taus, gammas = _random_points(s)
    worst = 0.0
    for t, g in zip(taus, gammas):
        U = core.frame_matrix(t)
        dU = np.diag([1j * t, -1j * t]) @ U
        Hbar = U @ core.hamiltonian_lab(t, g) @ U.conj().T + 1j * dU @ U.conj().T
        worst = max(worst, float(np.max(np.abs(Hbar - core.hamiltonian_interaction(t, g)))))
    return worst <= 1e-12, f"max deviation = {worst:.2e}"


@check("core_model", "picture_roundtrip")
def _roundtrip(s):
    st = core.SpinorState(0.6 + 0.0j, 0.8j)
    there = core.picture_transform(st, 1.7)
    back = core.picture_transform(there, 1.7)
    err = max(abs(back.a - st.a), abs(back.b - st.b))
    moduli = max(abs(abs(there.a) - abs(st.a)), abs(abs(there.b) - abs(st.b)))
    return err <= 1e-15 and moduli <= 1e-15, f"roundtrip {err:.1e}, moduli {moduli:.1e}"


# -- linalg2 ------------------------------------------------------------------


@check("linalg2", "unitarity")
def _unitarity(s):
    taus, gammas = _random_points(s)
    U = linalg2.exp_hermitian_step(core.hamiltonian_lab(taus, 1.3), 0.37)
    unit = float(np.max(np.abs(linalg2.dagger(U) @ U - linalg2.IDENTITY)))
    det = float(np.max(np.abs(np.linalg.det(U) - 1)))
    return unit <= 1e-14 and det <= 1e-13, f"|U^dagger U - I| = {unit:.1e}, |det - 1| = {det:.1e}"


@check("linalg2", "semigroup")
def _semigroup(s):
    H = core.hamiltonian_lab(0.8, 0.7)
    lhs = linalg2.exp_hermitian_step(H, 0.3) @ linalg2.exp_hermitian_step(H, 0.45)
    err = float(np.max(np.abs(lhs - linalg2.exp_hermitian_step(H, 0.75))))
    return err <= 1e-13, f"deviation {err:.1e}"


@check("linalg2", "parity")
def _parity(s):
    rng = np.random.default_rng(s.seed)
    worst = 0.0
    for k in range(1, 8):
        for _ in range(20):
            P = linalg2.IDENTITY
            for t in rng.uniform(-5, 5, k):
                P = linalg2.mat_mul(P, core.hamiltonian_interaction(t, 1.0))
            off = P[[0, 1], [0, 1]] if k % 2 else P[[0, 1], [1, 0]]
            worst = max(worst, float(np.max(np.abs(off))))
    return worst <= 1e-13, f"max forbidden entry {worst:.1e} (k <= 7)"


# -- propagator ---------------------------------------------------------------


@check("propagator", "unitarity")
def _prop_unitarity(s):
    grid = core.TimeGrid.symmetric(s.tau_max, s.step)
    traj = propagator.evolve(s.gamma, grid)
    drift = traj.max_norm_drift()
    ok = drift < 1e-8 and not traj.step_warning
    note = ", step exceeds phase-resolution limit" if traj.step_warning else ""
    return ok, f"ExpMidpoint norm drift {drift:.1e}{note}"


@check("propagator", "rk4_unitarity")
def _rk4_unitarity(s):
    grid = core.TimeGrid.symmetric(s.tau_max, 1e-3)
    traj = propagator.evolve(s.gamma, grid, method="rk4", picture="interaction")
    drift = traj.max_norm_drift()
    return drift < 1e-6, f"RK4 (interaction picture, step 1e-3) norm drift {drift:.1e}"


@check("propagator", "picture_equivalence")
def _pictures(s):
    grid = core.TimeGrid.symmetric(s.tau_max, s.step)
    lab = propagator.evolve(s.gamma, grid, picture="lab")
    inter = propagator.evolve(s.gamma, grid, picture="interaction")
    err = float(np.max(np.abs(np.abs(lab.a) - np.abs(inter.a))))
    return err < 1e-8, f"max ||a_lab| - |a_int|| = {err:.1e}"


def convergence_ratio(gamma: float = 0.5, tau_max: float = 20.0, step: float = 2e-2) -> float:
    """Error ratio of ``|a(end)|^2`` between steps ``h`` and ``h/2`` (reference ``h/16``)."""

    def final_pop(h):
        traj = propagator.evolve(gamma, core.TimeGrid.symmetric(tau_max, h))
        return abs(traj.a[-1]) ** 2

    ref = final_pop(step / 16)
    return abs(final_pop(step) - ref) / abs(final_pop(step / 2) - ref)


@check("propagator", "convergence")
def _convergence(s):
    ratio = convergence_ratio()
    return ratio >= 4.0, f"step-halving error ratio {ratio:.2f} (>= 4)"


@check("propagator", "lz_law")
def _lz_law(s):
    res = [
        propagator.survival_probability(g, s.tau_max, s.step) for g in (0.1, 0.5, 1.0, 2.0)
    ]
    worst = max(r.abs_error for r in res)
    mono = all(x.p_numeric > y.p_numeric for x, y in zip(res, res[1:]))
    return worst < 1e-2 and mono, f"max |p - e^(-pi gamma)| = {worst:.2e}, monotone={mono}"


@check("propagator", "gamma_only")
def _gamma_only(s):
    p1 = core.SweepParameters(alpha=4.0, coupling=2.0)
    p2 = core.SweepParameters(alpha=1.0, coupling=1.0)
    r1 = propagator.survival_probability(p1.gamma, 20.0, s.step)
    r2 = propagator.survival_probability(p2.gamma, 20.0, s.step)
    d = abs(r1.p_numeric - r2.p_numeric)
    return d <= 1e-10, f"difference {d:.1e}"


# -- special ------------------------------------------------------------------


@check("special", "fresnel_switch")
def _fresnel_switch(s):
    xs = np.linspace(0.9 * special.X_SWITCH, 1.1 * special.X_SWITCH, 41)
    d = max(abs(special._fresnel_series(x) - special._fresnel_tail_cf(x)) for x in xs)
    return d < 1e-12, f"series vs continued fraction on shell: {d:.1e}"


@check("special", "fresnel_symmetry")
def _fresnel_symmetry(s):
    xs = np.linspace(-12, 12, 97)
    ok = all(special.fresnel_e(-x) == -special.fresnel_e(x) for x in xs)
    lim = abs(special.fresnel_e(1e8) - special.FRESNEL_LIMIT)
    return ok and lim < 1e-8, f"antisymmetric={ok}, |E(1e8) - E(inf)| = {lim:.1e}"


@check("special", "theta")
def _theta(s):
    reg = s.reg
    up, down = special.theta_numeric(1.0, reg), special.theta_numeric(-1.0, reg)
    half = special.theta_halfvalue(reg)
    ok = abs(up - 1) < 5e-3 and abs(down) < 5e-3 and abs(half - 0.5) < 1e-4
    return ok, f"Theta(1)={up.real:.6f}, Theta(-1)={down.real:.2e}, half={half:.8f}"


@check("special", "theta_sum_rule")
def _sum_rule(s):
    reg = s.reg
    ts = np.array([10, 100, 1000]) * reg.epsilon
    worst = max(abs(special.theta_numeric(t, reg) + special.theta_numeric(-t, reg) - 1) for t in ts)
    return worst < 1e-2, f"max |Theta(t) + Theta(-t) - 1| = {worst:.2e}"


# -- dyson --------------------------------------------------------------------


@check("dyson", "T2")
def _t2(s):
    v = dyson.dyson_term_numeric(1, s.window, s.grid)
    rel = abs(v - math.pi / 2) / (math.pi / 2)
    return rel < 0.01 and abs(v.imag) < 0.02 * v.real, f"T2 = {v.real:.6f}{v.imag:+.1e}i, rel {rel:.1e}"


@check("dyson", "T4")
def _t4(s):
    v = dyson.dyson_term_numeric(2, s.window, s.grid)
    exact = dyson.dyson_term_analytic(2)
    rel = abs(v - exact) / exact
    return rel < 0.03, f"T4 = {v.real:.6f}{v.imag:+.1e}i, rel {rel:.1e}"


@check("dyson", "frequency_ordered")
def _freq(s):
    v1 = dyson.frequency_ordered_check(1, s.reg)
    v2 = dyson.frequency_ordered_check(2, s.reg)
    ok = abs(v1 - 0.5) < 1e-3 and abs(v2 - 0.125) < 1e-2
    return ok, f"n=1: {v1.real:.6f}, n=2: {v2.real:.6f}"


@check("dyson", "identical_ordering")
def _identical(s):
    x = np.linspace(-10, 10, 4001)
    f = 2 * np.exp(-x * x) / math.sqrt(math.pi)
    ordered, power = dyson.identical_function_ordering_check(f, 3, x[1] - x[0])
    return abs(ordered - 4 / 3) < 1e-6 and abs(power - 4 / 3) < 1e-6, f"{ordered:.9f} vs {power:.9f}"


@check("dyson", "series")
def _series(s):
    worst = max(dyson.series_sum(g, 25).abs_error for g in np.linspace(0, 2, 21))
    return worst < 1e-10, f"max |S_25 - e^(-pi gamma/2)| = {worst:.1e}"


@check("dyson", "consistency_triangle")
def _triangle(s):
    g = 0.5
    amp_prop = math.sqrt(propagator.survival_probability(g, s.tau_max, s.step).p_numeric)
    amp_series = dyson.series_sum(g, 25).value
    amp_exact = analytic.lz_prediction(g).amplitude
    worst = max(abs(amp_prop - amp_series), abs(amp_prop - amp_exact), abs(amp_series - amp_exact))
    return worst < 2e-2, f"propagator {amp_prop:.5f}, series {amp_series:.5f}, exact {amp_exact:.5f}"


# -- analytic -----------------------------------------------------------------


@check("analytic", "functional_equation")
def _functional(s):
    rng = np.random.default_rng(s.seed)
    worst = 0.0
    for g1, g2 in rng.uniform(0, 3, (50, 2)):
        lhs = analytic.survival(g1 + g2)
        worst = max(worst, abs(lhs - analytic.survival(g1) * analytic.survival(g2)))
    return worst <= 1e-14, f"max deviation {worst:.1e}"


@check("analytic", "consistency")
def _analytic_consistency(s):
    gs = np.linspace(0, 5, 51)
    preds = [analytic.lz_prediction(g) for g in gs]
    ok = all(
        abs(p.survival - p.amplitude**2) < 1e-15 and abs(p.survival + p.transition - 1) < 1e-15
        for p in preds
    )
    mono = all(a.survival > b.survival for a, b in zip(preds, preds[1:]))
    return ok and mono, f"identities={ok}, monotone={mono}"


def run_checks(settings: Settings | None = None, only: list[str] | None = None) -> list[CheckResult]:
    settings = settings or Settings()
    groups = list(only) if only else list(GROUPS)
    unknown = set(groups) - set(GROUPS)
    if unknown:
        raise ValueError(f"unknown check group(s): {', '.join(sorted(unknown))}")
    results = []
    for group in groups:
        for name, fn in _REGISTRY[group]:
            try:
                passed, detail = fn(settings)
            except Exception as exc:  # a crashing check is a failed check
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, bool(passed), detail))
    return results
