"""Single-mode (Lorentzian line) model of the OPO extended to arbitrary gain.

The cavity is replaced by one mode with energy decay rates ``gamma1``
(output coupler) and ``gamma2`` (losses) and parametric gain rate
``epsilon``. Its G2(T) is a double exponential; multiplying by a Dirichlet
comb gives the multimode approximation that is compared against
:mod:`cespdc.comb`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import comb as comb_mod
from ._errors import ConvergenceError, DomainError, ThresholdError
from .bogoliubov import BogoliubovCoeffs
from .params import CavityParams, GainSetting, check_gain, make_cavity, make_gain

CONVENTIONS = ("energy", "amplitude")


@dataclass(frozen=True)
class SingleModeParams:
    gamma1: float
    gamma2: float
    epsilon: float

    def __post_init__(self):
        if self.gamma1 < 0 or self.gamma2 < 0 or self.epsilon < 0:
            raise DomainError("decay and gain rates must be non-negative", "rates")
        if not self.epsilon < 0.5 * (self.gamma1 + self.gamma2):
            raise ThresholdError(
                f"epsilon={self.epsilon!r} is at or above (gamma1+gamma2)/2="
                f"{0.5 * (self.gamma1 + self.gamma2)!r}", "epsilon")


def rate_mapping(cavity: CavityParams, r: float, convention: str = "energy"):
    """Map mirror amplitudes and single-pass gain onto (gamma1, gamma2, epsilon).

    ``"energy"``: r_i^2 = exp(-gamma_i tau) and epsilon = r / tau, so that
    the mode's field decays by r1 r2 e^{r} per round trip just as the full
    model does.

    ``"amplitude"``: r_i = exp(-gamma_i tau) and epsilon = r / (2 tau). Both
    put threshold at epsilon = (gamma1 + gamma2)/2, but this one makes every
    rate half as large, so envelopes decay twice as slowly as the multimode
    result.

    No validation; used for boundary checks where ``r`` may equal threshold.
    """
    if convention == "energy":
        scale, gain_scale = 2.0, 1.0
    elif convention == "amplitude":
        scale, gain_scale = 1.0, 0.5
    else:
        raise DomainError(f"unknown rate convention {convention!r}", "convention")
    tau = cavity.tau
    gamma1 = -scale * math.log(cavity.r1) / tau
    gamma2 = -scale * math.log(cavity.r2) / tau
    return gamma1, gamma2, gain_scale * r / tau


def from_cavity(cavity: CavityParams, gain: GainSetting,
                convention: str = "energy") -> SingleModeParams:
    check_gain(cavity, gain)
    if cavity.r1 == 0.0:
        raise DomainError("single-mode model needs r1 > 0", "r1")
    return SingleModeParams(*rate_mapping(cavity, gain.r, convention))


def _f_pm(params, T):
    g = params.gamma1 + params.gamma2
    e2 = 2.0 * params.epsilon
    aT = np.abs(np.asarray(T, dtype=float))
    f_minus = np.exp(-0.5 * aT * (g - e2)) / (g - e2)
    f_plus = np.exp(-0.5 * aT * (g + e2)) / (g + e2)
    return f_minus, f_plus


def g2_single(params: SingleModeParams, T):
    """Closed-form single-mode G2(T).

    (pi/2) g1^2 eps^2 [(f- + f+)^2 + (f- - f+)^2 + (f-(0) - f+(0))^2] with
    f+- = exp(-|T|(g1 + g2 +- 2 eps)/2) / (g1 + g2 +- 2 eps).
    """
    f_minus, f_plus = _f_pm(params, T)
    f0_minus, f0_plus = _f_pm(params, 0.0)
    pref = 0.5 * math.pi * params.gamma1 ** 2 * params.epsilon ** 2
    return pref * ((f_minus + f_plus) ** 2 + (f_minus - f_plus) ** 2
                   + (f0_minus - f0_plus) ** 2)


def single_mode_coeffs(params: SingleModeParams, omega) -> BogoliubovCoeffs:
    """Single-mode Bogoliubov coefficients (no low-gain approximation)."""
    omega = np.asarray(omega, dtype=float)
    g1, g2, eps = params.gamma1, params.gamma2, params.epsilon
    s = 0.5 * (g1 + g2) - 1j * omega
    den = s * s - eps * eps
    A = ((0.5 * g1) ** 2 - (0.5 * g2 - 1j * omega) ** 2 + eps * eps) / den
    B = g1 * eps / den
    C = math.sqrt(g1 * g2) * s / den
    D = math.sqrt(g1 * g2) * eps / den
    return BogoliubovCoeffs(omega, A, B, C, D)


def _fourier(fn, T, ref=None):
    # (1/sqrt(2 pi)) int f(w) e^{-i w T} dw for even real f, as 2 int_0^inf cos;
    # ``ref`` is the T = 0 integral, against which the tail error is judged
    kw = dict(full_output=1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if T == 0.0:
            res = integrate.quad(fn, 0.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=1000, **kw)
        else:
            res = integrate.quad(fn, 0.0, np.inf, weight="cos", wvar=abs(T),
                                 epsabs=1e-15 * abs(ref), limlst=200, **kw)
    value, err = res[0], res[1]
    ref = abs(value) if ref is None else abs(ref)
    if not err <= 1e-10 * abs(value) + 1e-12 * ref:
        raise ConvergenceError(f"Fourier integral at T={T} did not converge", err)
    return 2.0 * value / math.sqrt(2.0 * math.pi)


def g2_single_assembled(params: SingleModeParams, T):
    """G2(T) from the single-mode coefficients by numerical Fourier transform.

    Builds Gamma(w) = A(w)B(-w) + C(w)D(-w) and Upsilon(w) = B(w)B(-w) +
    D(w)D(-w) and transforms them with adaptive quadrature. Verification
    path for ``g2_single``; slow.
    """
    def gamma_w(w):
        p, m = single_mode_coeffs(params, w), single_mode_coeffs(params, -w)
        return (p.A * m.B + p.C * m.D).real

    def upsilon_w(w):
        p, m = single_mode_coeffs(params, w), single_mode_coeffs(params, -w)
        return (p.B * m.B + p.D * m.D).real

    norm = math.sqrt(2.0 * math.pi) / 2.0
    gam0 = _fourier(gamma_w, 0.0)
    ups0 = _fourier(upsilon_w, 0.0)
    T_arr = np.atleast_1d(np.asarray(T, dtype=float))
    out = np.empty_like(T_arr)
    for i, t in enumerate(T_arr):
        out[i] = (_fourier(gamma_w, t, gam0 * norm) ** 2
                  + _fourier(upsilon_w, t, ups0 * norm) ** 2 + ups0 ** 2)
    return out if np.ndim(T) else float(out[0])


def g2_multi_finite_n(params: SingleModeParams, N: int, T, tau: float = 1.0):
    """Single-mode G2 times the (2N+1)-mode comb sin^2((2N+1) pi T/tau) / sin^2(pi T/tau)."""
    if N < 0:
        raise DomainError("mode index N must be >= 0", "N")
    T = np.asarray(T, dtype=float)
    n = 2 * N + 1
    x = np.pi * T / tau
    s = np.sin(x)
    on_peak = np.isclose(np.mod(T / tau + 0.5, 1.0) - 0.5, 0.0, atol=1e-12)
    with np.errstate(divide="ignore", invalid="ignore"):
        kern = np.where(on_peak, float(n * n), np.sin(n * x) ** 2 / np.where(on_peak, 1.0, s * s))
    return g2_single(params, T) * kern


def model_envelopes(cavity: CavityParams, gain: GainSetting, k_max: int | None = None,
                    convention: str = "energy"):
    """Multimode and single-mode G2 envelopes at T = k*tau, both 1 at T = 0.

    Returns ``(times, multimode, single_mode)``.
    """
    c = comb_mod.g2_comb(cavity, gain, k_max)
    times, multi = comb_mod.g2_envelope_normalized(c)
    sm = from_cavity(cavity, gain, convention)
    single = g2_single(sm, times)
    return times, multi, single / single[0]


def compare_models(cavity: CavityParams, gain: GainSetting, k_max: int | None = None,
                   metric: str = "peak", convention: str = "energy") -> float:
    """Largest deviation between the multimode comb and the single-mode model.

    Both envelopes are normalized to unity at T = 0 (this removes their
    different global constants) and sampled at the comb lags T = k*tau.

    ``metric="peak"`` (default) returns max_k |multi_k - single_k|, i.e. the
    deviation as a fraction of the zero-lag value G2(0). ``"pointwise"``
    divides by multi_k instead; it is dominated by the far tail, where both
    envelopes sit at the accidental background.
    """
    _, multi, single = model_envelopes(cavity, gain, k_max, convention)
    diff = np.abs(multi - single)
    if metric == "peak":
        return float(diff.max())
    if metric == "pointwise":
        return float((diff / multi).max())
    raise DomainError(f"unknown metric {metric!r}", "metric")


def scan_models(r1_values, r2_values, fractions, tau: float = 1.0, k_max: int | None = None,
                metric: str = "peak", convention: str = "energy"):
    """Grid scan of ``compare_models``.

    Returns a list of ``(r1, r2, fraction, deviation)`` rows in r1, r2,
    fraction nesting order.
    """
    rows = []
    for r1 in r1_values:
        for r2 in r2_values:
            cav = make_cavity(float(r1), float(r2), tau)
            for frac in fractions:
                gain = make_gain(cav, fraction=float(frac))
                dev = compare_models(cav, gain, k_max, metric, convention)
                rows.append((float(r1), float(r2), float(frac), dev))
    return rows
