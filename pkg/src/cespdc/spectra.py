"""Scalar spectral functions of the output field.

``gamma_fn`` is the anomalous (phase-sensitive) correlation spectrum
A(w)B(-w) + C(w)D(-w) and ``upsilon_fn`` the photon-number spectrum
B(w)B(-w) + D(w)D(-w), both in the closed forms that follow from
r_i^2 + t_i^2 = 1. The ``*_assembled`` variants build the same quantities
from the Bogoliubov coefficients and exist as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bogoliubov
from .params import CavityParams, GainSetting


@dataclass(frozen=True)
class SpectralSample:
    omega: np.ndarray
    gamma_val: np.ndarray
    upsilon_val: np.ndarray


def _kernel(cavity, gain, omega):
    d = bogoliubov.denominator(cavity, gain, omega)
    return d.real ** 2 + d.imag ** 2


def gamma_fn(cavity: CavityParams, gain: GainSetting, omega):
    omega = np.asarray(omega, dtype=float)
    q = cavity.q
    bracket = (1.0 + q * q) * np.cosh(gain.r) - 2.0 * q * np.cos(omega * cavity.tau)
    return _kernel(cavity, gain, omega) * cavity.t1 ** 2 * np.sinh(gain.r) * bracket


def upsilon_fn(cavity: CavityParams, gain: GainSetting, omega):
    q = cavity.q
    return (_kernel(cavity, gain, omega) * cavity.t1 ** 2
            * np.sinh(gain.r) ** 2 * (1.0 - q * q))


def gamma_assembled(cavity: CavityParams, gain: GainSetting, omega):
    """A(w)B(-w) + C(w)D(-w) from the coefficients; complex, imaginary part ~ 0."""
    omega = np.asarray(omega, dtype=float)
    p = bogoliubov.coeffs(cavity, gain, omega)
    m = bogoliubov.coeffs(cavity, gain, -omega)
    return p.A * m.B + p.C * m.D


def upsilon_assembled(cavity: CavityParams, gain: GainSetting, omega):
    """B(w)B(-w) + D(w)D(-w) from the coefficients; complex, imaginary part ~ 0."""
    omega = np.asarray(omega, dtype=float)
    p = bogoliubov.coeffs(cavity, gain, omega)
    m = bogoliubov.coeffs(cavity, gain, -omega)
    return p.B * m.B + p.D * m.D


def spectral_sample(cavity: CavityParams, gain: GainSetting, omega) -> SpectralSample:
    omega = np.asarray(omega, dtype=float)
    return SpectralSample(omega, gamma_fn(cavity, gain, omega),
                          upsilon_fn(cavity, gain, omega))


def squeezing_spectrum(cavity: CavityParams, gain: GainSetting, Omega, theta=0.0):
    """Noise spectral density of the theta-quadrature at sideband ``Omega``.

    S(Omega, theta) = |A + e^{i theta} B|^2 + |C + e^{i theta} D|^2, in units
    where vacuum gives 1. theta = 0 is the quadrature a_out(Omega) +
    a_out^+(-Omega); values below 1 indicate squeezing.
    """
    c = bogoliubov.coeffs(cavity, gain, Omega)
    rot = np.exp(1j * np.asarray(theta, dtype=float))
    return abs(c.A + rot * c.B) ** 2 + abs(c.C + rot * c.D) ** 2


def optimal_squeezing(cavity: CavityParams, gain: GainSetting, Omega):
    """Minimum of S(Omega, theta) over the quadrature angle.

    Returns ``(s_min, theta_min)``.
    """
    c = bogoliubov.coeffs(cavity, gain, Omega)
    total = abs(c.A) ** 2 + abs(c.B) ** 2 + abs(c.C) ** 2 + abs(c.D) ** 2
    cross = c.A * np.conj(c.B) + c.C * np.conj(c.D)
    theta_min = np.angle(cross) + np.pi
    return total - 2.0 * abs(cross), np.mod(theta_min, 2.0 * np.pi)
