"""Multimode second-order correlation G2(T) as a comb of delta peaks.

Below threshold the output intensity correlation is

    G2(T) = sum_k w_|k| delta(T - k tau) + b

where the weights come from the Fourier-cosine coefficients F(k) of the
line-shape kernel |d(omega)|^2,

    F(k) = (2/pi) int_0^pi |d(theta/tau)|^2 cos(k theta) dtheta,

and ``b`` is the lag-independent accidental-coincidence floor. Weights and
background are kept separate because one is a delta weight and the other a
constant; they are combined only by ``g2_envelope_normalized`` and
``render_lorentzian``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

from . import bogoliubov
from ._errors import ConvergenceError, DegenerateCombError, DomainError
from .params import CavityParams, GainSetting, PoleParams, check_gain, pole_params

DEFAULT_WEIGHT_CUTOFF = 1e-12
DEFAULT_HARD_LIMIT = 10_000


@dataclass(frozen=True)
class FourierCoeffs:
    values: np.ndarray

    @property
    def k_max(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class CorrelationComb:
    """Comb weights ``weights[k]`` at T = k*tau (k >= 0, mirrored to -k) and a background."""

    weights: np.ndarray
    background: float
    tau: float
    gain_fraction: float

    @property
    def k_max(self) -> int:
        return len(self.weights) - 1

    @property
    def lags(self) -> np.ndarray:
        return np.arange(len(self.weights))

    @property
    def times(self) -> np.ndarray:
        return self.lags * self.tau

    def symmetric(self):
        """Lags -k_max..k_max with the mirrored weights."""
        k = np.arange(-self.k_max, self.k_max + 1)
        return k, self.weights[np.abs(k)]


def _sinh_ratio_scaled(m, r, eta):
    # exp(-eta) * sinh(m r) / sinh(r) in exponent form: large m*r cannot overflow
    m = np.asarray(m, dtype=float)
    if r == 0.0:
        return m * np.exp(-eta)
    am = np.abs(m)
    return (np.sign(m) * 0.5 * np.exp(-eta + am * r) * -np.expm1(-2.0 * am * r)
            / math.sinh(r))


def _f_values(q, r_th, r, k):
    """F(k) for integer array ``k`` from q = r1 r2, threshold and gain."""
    k = np.asarray(k, dtype=float)
    if q == 0.0:
        return np.where(k == 0, 2.0, 0.0)
    R = r_th
    # e^{-kR} [e^R sinh((k+1)r) - e^{-R} sinh((k-1)r)] / sinh(r)
    num = (_sinh_ratio_scaled(k + 1.0, r, (k - 1.0) * R)
           - _sinh_ratio_scaled(k - 1.0, r, (k + 1.0) * R))
    den = 4.0 * q * q * math.sinh(R) * math.sinh(R - r) * math.sinh(R + r)
    return num / den


def f_closed(pole: PoleParams, cavity: CavityParams, k):
    """Closed-form Fourier coefficient F(k) of the line-shape kernel.

    Partial fractions in cos(theta) give, for x != y,

        F(k) = [rho_x^k / sqrt(x^2-1) - rho_y^k / sqrt(y^2-1)] / (2 q^2 (y - x))

    with rho_z = z - sqrt(z^2 - 1). Writing x = cosh(eta_x), y = cosh(eta_y)
    turns this into a ratio of hyperbolic sines that stays accurate as
    x -> y, and whose r -> 0 limit is the double-pole formula.

    Parameters
    ----------
    pole : PoleParams
    cavity : CavityParams
        Supplies q = r1 r2.
    k : int or array_like of int
        Lag index, k >= 0.
    """
    if not (pole.x > 1.0 and pole.y > 1.0):
        raise DomainError(f"pole parameters must exceed 1, got x={pole.x}, y={pole.y}", "pole")
    k_arr = np.asarray(k)
    if np.any(k_arr < 0):
        raise DomainError("lag index k must be >= 0", "k")
    r_th = 0.5 * (pole.eta_x + pole.eta_y)
    out = _f_values(cavity.q, r_th, pole.r, k_arr)
    return float(out) if out.ndim == 0 else out


def _quad_piece(f, a, b, k, epsabs, epsrel):
    kw = dict(epsabs=epsabs, epsrel=epsrel, limit=500, full_output=1)
    if k == 0:
        res = integrate.quad(f, a, b, **kw)
    else:
        res = integrate.quad(f, a, b, weight="cos", wvar=k, **kw)
    return res[0], res[1]


def f_quadrature(cavity: CavityParams, gain: GainSetting, k: int, epsrel: float = 1e-13):
    """F(k) by adaptive quadrature of its defining integral.

    Independent of ``f_closed``: it integrates |d|^2 from the Bogoliubov
    module directly. The interval is split geometrically around theta = 0,
    where the kernel peaks with width ~ r_th - r.
    """
    check_gain(cavity, gain)
    if k < 0:
        raise DomainError("lag index k must be >= 0", "k")
    tau = cavity.tau

    def kernel(theta):
        d = bogoliubov.denominator(cavity, gain, theta / tau)
        return d.real ** 2 + d.imag ** 2

    peak = kernel(0.0)
    width = gain.r_th - gain.r
    edges = [0.0]
    if math.isfinite(width):
        edge = width
        while edge < math.pi:
            edges.append(edge)
            edge *= 8.0
    edges.append(math.pi)

    # pieces far from the peak only need absolute accuracy relative to the peak region
    epsabs = 1e-16 * peak * min(1.0, width if math.isfinite(width) else 1.0)
    total, err = 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            v, e = _quad_piece(kernel, a, b, k, epsabs, epsrel)
            total += v
            err += e
    value = 2.0 / math.pi * total
    err = 2.0 / math.pi * err
    tol = max(1e-10 * abs(value), 1e-12 * peak * min(1.0, width if math.isfinite(width) else 1.0))
    if not err <= tol:
        raise ConvergenceError(
            f"quadrature for F({k}) did not converge (error estimate {err:.3g})", err)
    return value


def f_hypergeometric(pole: PoleParams, cavity: CavityParams, k: int, dps: int = 30):
    """F(k) through regularized 3F2({1/2,1,1},{1-k,1+k}; z) functions.

    Verification path only. The regularized series starts at n = k; shifting
    the index gives z^k (1/2)_k k!/(2k)! 2F1(k+1/2, k+1; 2k+1; z), which
    mpmath evaluates reliably for z close to 1 (near threshold). Undefined
    at zero gain, where x = y.
    """
    if pole.eta_x == pole.eta_y:
        raise DomainError("hypergeometric form is singular at x = y (zero gain)", "pole")
    with mpmath.workdps(dps):
        k_m = int(k)
        q = mpmath.mpf(cavity.q)
        x = mpmath.cosh(mpmath.mpf(pole.eta_x))
        y = mpmath.cosh(mpmath.mpf(pole.eta_y))

        def reg3f2(z):
            pre = z ** k_m * mpmath.rf(mpmath.mpf(1) / 2, k_m) * mpmath.factorial(k_m)
            pre /= mpmath.factorial(2 * k_m)
            return pre * mpmath.hyp2f1(k_m + mpmath.mpf(1) / 2, k_m + 1, 2 * k_m + 1, z)

        pre = 2 / (4 * q ** 2) / ((x - y) * (1 + x) * (1 + y))
        val = pre * ((1 + x) * reg3f2(2 / (1 + y)) - (1 + y) * reg3f2(2 / (1 + x)))
        return float(val)


def fourier_coeffs(cavity: CavityParams, gain: GainSetting, k_max: int,
                   method: str = "closed") -> FourierCoeffs:
    """F(0..k_max) by ``method`` in {"closed", "quadrature", "hypergeometric"}."""
    check_gain(cavity, gain)
    ks = np.arange(k_max + 1)
    if method == "closed":
        vals = _f_values(cavity.q, gain.r_th, gain.r, ks)
    elif method == "quadrature":
        vals = np.array([f_quadrature(cavity, gain, int(k)) for k in ks])
    elif method == "hypergeometric":
        pole = pole_params(cavity, gain)
        vals = np.array([f_hypergeometric(pole, cavity, int(k)) for k in ks])
    else:
        raise ValueError(f"unknown method {method!r}")
    return FourierCoeffs(vals)


def _weights(cavity, gain, k_max):
    q, r = cavity.q, gain.r
    F = _f_values(q, gain.r_th, r, np.arange(k_max + 2))
    F_prev = np.concatenate([F[1:2], F[:k_max]])  # F(|k-1|), F(1) at k=0
    t14 = cavity.t1 ** 4
    sh = math.sinh(r)
    anomalous = (1.0 + q * q) * math.cosh(r) * F[:k_max + 1] - q * F[1:] - q * F_prev
    normal_amp = sh * sh * (1.0 - q * q)
    w = t14 * sh * sh * anomalous ** 2 + t14 * normal_amp ** 2 * F[:k_max + 1] ** 2
    b = t14 * normal_amp ** 2 * F[0] ** 2
    return w, float(b)


def auto_k_max(cavity: CavityParams, gain: GainSetting,
               cutoff: float = DEFAULT_WEIGHT_CUTOFF,
               hard_limit: int = DEFAULT_HARD_LIMIT) -> int:
    """Smallest k with w_k / w_0 < ``cutoff``, never more than ``hard_limit``."""
    check_gain(cavity, gain)
    if gain.r == 0.0:
        return 0
    if cavity.q == 0.0:
        return 1
    # weights decay like (r1 r2 e^r)^{2k}
    log_rho = -(gain.r_th - gain.r)
    estimate = int(math.ceil(math.log(cutoff) / (2.0 * log_rho))) + 8
    n = min(hard_limit, 2 * estimate + 16)
    while True:
        w, _ = _weights(cavity, gain, n)
        below = np.nonzero(w < cutoff * w[0])[0]
        if below.size:
            return int(below[0])
        if n >= hard_limit:
            return hard_limit
        n = min(hard_limit, 2 * n)


def g2_comb(cavity: CavityParams, gain: GainSetting, k_max: int | None = None,
            hard_limit: int = DEFAULT_HARD_LIMIT) -> CorrelationComb:
    """Delta-comb weights and background of the multimode G2(T).

    w_k = t1^4 sinh^2 r [(1 + q^2) cosh r F(k) - q F(k+1) - q F(|k-1|)]^2
          + t1^4 sinh^4 r (1 - q^2)^2 F(k)^2
    b   = t1^4 sinh^4 r (1 - q^2)^2 F(0)^2

    with q = r1 r2. ``k_max=None`` picks it with ``auto_k_max``. Weights are
    reported without rescaling; only ratios are convention-free.
    """
    check_gain(cavity, gain)
    if k_max is None:
        k_max = auto_k_max(cavity, gain, hard_limit=hard_limit)
    if k_max < 0:
        raise DomainError("k_max must be >= 0", "k_max")
    w, b = _weights(cavity, gain, int(k_max))
    return CorrelationComb(w, b, cavity.tau, gain.fraction)


def g2_envelope_normalized(comb: CorrelationComb):
    """Peak-plus-background envelope (w_k + b) / (w_0 + b) at T = k*tau.

    Returns ``(times, values)``; the value at T = 0 is exactly 1.
    """
    norm = comb.weights[0] + comb.background
    if not norm > 0.0:
        raise DegenerateCombError("comb is identically zero (zero gain); cannot normalize")
    return comb.times, (comb.weights + comb.background) / norm


def render_lorentzian(comb: CorrelationComb, fwhm: float, t_grid):
    """Plot-ready trace with each delta peak replaced by a unit-area Lorentzian.

    Cosmetic only: the physical peak width is set by the phase-matching
    bandwidth, which the model takes as infinite.
    """
    if not fwhm > 0.0:
        raise DomainError(f"fwhm must be positive, got {fwhm!r}", "fwhm")
    if fwhm > comb.tau / 2:
        warnings.warn(f"fwhm={fwhm} exceeds tau/2={comb.tau / 2}; neighbouring peaks merge",
                      stacklevel=2)
    t = np.asarray(t_grid, dtype=float)
    half = 0.5 * fwhm
    k, w = comb.symmetric()
    out = np.full(t.shape, comb.background, dtype=float)
    for kk, wk in zip(k, w):
        dt = t - kk * comb.tau
        out += wk * (half / np.pi) / (dt * dt + half * half)
    return out
