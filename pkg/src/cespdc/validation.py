"""Cross-validation gates run by ``cespdc verify`` and the acceptance tests.

Each gate compares two independent routes to the same quantity and returns
a :class:`GateResult` with the worst deviation seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bogoliubov, comb, oracle, single_mode, spectra
from .params import make_cavity, make_gain


@dataclass
class GateResult:
    name: str
    worst: float
    tolerance: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: worst={self.worst:.3e} tol={self.tolerance:.1e}"


def _random_setups(rng, n, r_lo=0.0, r_hi=0.999, frac_hi=0.999):
    r1 = rng.uniform(r_lo, r_hi, n)
    r2 = rng.uniform(max(r_lo, 1e-3), r_hi, n)
    frac = rng.uniform(0.0, frac_hi, n)
    return r1, r2, frac


def symplectic_gate(n=1000, seed=1, tol=1e-12) -> GateResult:
    """|A|^2 + |C|^2 - |B|^2 - |D|^2 = 1 over random parameters and frequencies."""
    rng = np.random.default_rng(seed)
    r1, r2, frac = _random_setups(rng, n)
    theta = rng.uniform(-math.pi, math.pi, n)
    worst = 0.0
    for a, b, f, th in zip(r1, r2, frac, theta):
        cav = make_cavity(a, b)
        if cav.r1 == 0.0:
            gain = make_gain(cav, r=f)
        else:
            gain = make_gain(cav, fraction=f)
        defect = abs(float(bogoliubov.coeffs(cav, gain, th).unitarity_defect()))
        worst = max(worst, defect)
    return GateResult("symplectic invariant", worst, tol, worst < tol, {"samples": n})


def fourier_gate(n=1000, seed=2, k_top=50, tol=1e-9, zero_gain_every=10) -> GateResult:
    """Closed-form F(k) against adaptive quadrature, relative to F(0).

    Every ``zero_gain_every``-th sample uses r = 0 (the double-pole case).
    """
    rng = np.random.default_rng(seed)
    r1, r2, frac = _random_setups(rng, n, r_lo=0.05, frac_hi=0.99)
    ks = rng.integers(0, k_top + 1, n)
    worst = 0.0
    for i, (a, b, f, k) in enumerate(zip(r1, r2, frac, ks)):
        cav = make_cavity(a, b)
        gain = make_gain(cav, fraction=0.0 if i % zero_gain_every == 0 else f)
        F = comb.fourier_coeffs(cav, gain, int(k)).values
        quad_k = comb.f_quadrature(cav, gain, int(k))
        worst = max(worst, abs(quad_k - F[k]) / F[0])
    return GateResult("F(k) closed form vs quadrature", worst, tol, worst < tol,
                      {"samples": n, "k_max": k_top})


def oracle_gate(n=100, seed=3, k_max=30, tol=1e-8) -> GateResult:
    """Normalized comb weights and background against the time-domain moment oracle."""
    rng = np.random.default_rng(seed)
    r1 = rng.uniform(0.3, 0.99, n)
    r2 = rng.uniform(0.3, 0.99, n)
    frac = rng.uniform(0.01, 0.95, n)
    worst = 0.0
    for a, b, f in zip(r1, r2, frac):
        cav = make_cavity(a, b)
        gain = make_gain(cav, fraction=f)
        c = comb.g2_comb(cav, gain, k_max)
        o = oracle.g2_from_moments(oracle.two_time_output_correlators(cav, gain, k_max))
        w = c.weights / c.weights[0]
        dev = max(np.max(np.abs(w - o.weights)),
                  abs(c.background / c.weights[0] - o.background))
        worst = max(worst, float(dev))
    return GateResult("comb vs time-domain oracle", worst, tol, worst < tol,
                      {"grid_points": n, "k_max": k_max})


def lu_ou_gate(n_r=25, n_gain=19, tol=0.08, corner_tol=0.01) -> GateResult:
    """Multimode vs extended single-mode envelopes over the r1, r2 > 0.5 region."""
    rs = np.linspace(0.5, 0.99, n_r)
    fracs = np.linspace(0.01, 0.95, n_gain)
    rows = single_mode.scan_models(rs, rs, fracs)
    devs = np.array([row[3] for row in rows])
    worst_row = rows[int(np.argmax(devs))]
    corner = [row[3] for row in rows if row[0] >= 0.95 and row[1] >= 0.95 and row[2] <= 0.05]
    corner_worst = max(corner) if corner else 0.0
    passed = devs.max() <= tol and corner_worst < corner_tol
    return GateResult("single-mode model agreement", float(devs.max()), tol, passed,
                      {"points": len(rows), "worst_at": worst_row[:3],
                       "corner_worst": corner_worst, "corner_tol": corner_tol})


def gain_broadening_gate(r1=0.9, r2=0.9, fractions=(0.01, 0.5, 0.9), lags=(1, 3, 10)) -> GateResult:
    """Normalized envelope at fixed lags and background fraction both rise with gain."""
    cav = make_cavity(r1, r2)
    env, bg = [], []
    for f in fractions:
        c = comb.g2_comb(cav, make_gain(cav, fraction=f), max(lags))
        _, values = comb.g2_envelope_normalized(c)
        env.append(values[list(lags)])
        bg.append(c.background / (c.weights[0] + c.background))
    env = np.array(env)
    steps = np.concatenate([np.diff(env, axis=0).ravel(), np.diff(bg)])
    worst = float(steps.min())
    return GateResult("gain broadening", worst, 0.0, worst > 0.0,
                      {"envelopes": env.tolist(), "background_fraction": bg})


def single_mode_gate(params_list=None, n_times=11, tol=1e-9) -> GateResult:
    """Closed-form single-mode G2 against Fourier quadrature of its coefficients."""
    if params_list is None:
        params_list = [single_mode.SingleModeParams(1.0, 1.0, 0.25),
                       single_mode.SingleModeParams(0.3, 0.5, 0.35),
                       single_mode.SingleModeParams(2.0, 0.1, 0.01)]
    worst = 0.0
    for p in params_list:
        T = np.linspace(0.0, 20.0 / (p.gamma1 + p.gamma2), n_times)
        closed = single_mode.g2_single(p, T)
        assembled = single_mode.g2_single_assembled(p, T)
        worst = max(worst, float(np.max(np.abs(assembled / closed - 1.0))))
    return GateResult("single-mode dual path", worst, tol, worst < tol)


def squeezing_gate(r1=0.9, r2=0.95, fraction=0.5, n_omega=601) -> GateResult:
    """Vacuum identity at r = 0, lossless uncertainty product 1, lossy product >= 1."""
    theta = np.linspace(-3 * math.pi, 3 * math.pi, n_omega)   # three FSRs
    cav = make_cavity(r1, r2)
    vac = spectra.squeezing_spectrum(cav, make_gain(cav, r=0.0), theta)
    vac_dev = float(np.max(np.abs(vac - 1.0)))
    lossless = make_cavity(r1, 1.0)
    g = make_gain(lossless, fraction=fraction)
    prod = (spectra.squeezing_spectrum(lossless, g, theta, 0.0)
            * spectra.squeezing_spectrum(lossless, g, theta, math.pi))
    lossless_dev = float(np.max(np.abs(prod - 1.0)))
    g = make_gain(cav, fraction=fraction)
    prod = (spectra.squeezing_spectrum(cav, g, theta, 0.0)
            * spectra.squeezing_spectrum(cav, g, theta, math.pi))
    lossy_min = float(prod.min())
    passed = vac_dev < 1e-12 and lossless_dev < 1e-10 and lossy_min >= 1.0 - 1e-12
    return GateResult("squeezing sanity", max(vac_dev, lossless_dev), 1e-10, passed,
                      {"vacuum_dev": vac_dev, "lossless_dev": lossless_dev,
                       "lossy_min_product": lossy_min})


def run_all(quick=True):
    """Run every gate; ``quick`` shrinks the random sample sizes for interactive use."""
    if quick:
        gates = [symplectic_gate(200), fourier_gate(100), oracle_gate(30),
                 lu_ou_gate(9, 7), gain_broadening_gate(), single_mode_gate(n_times=5),
                 squeezing_gate()]
    else:
        gates = [symplectic_gate(), fourier_gate(), oracle_gate(), lu_ou_gate(),
                 gain_broadening_gate(), single_mode_gate(), squeezing_gate()]
    return gates
