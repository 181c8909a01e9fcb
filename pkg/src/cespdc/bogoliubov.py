"""Frequency-domain input-output map of the sub-threshold cavity.

The output field at angular frequency omega is

    a_out(w) = A(w) a_in(w) + B(w) a_in^+(-w) + C(w) b_in(w) + D(w) b_in^+(-w)

with ``a_in`` entering through the output coupler and ``b_in`` through the
lumped loss mirror. All functions broadcast over array-valued ``omega``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import CavityParams, GainSetting, check_gain


@dataclass(frozen=True)
class BogoliubovCoeffs:
    omega: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def unitarity_defect(self):
        """|A|^2 + |C|^2 - |B|^2 - |D|^2 - 1, zero for a valid transformation."""
        return (abs(self.A) ** 2 + abs(self.C) ** 2
                - abs(self.B) ** 2 - abs(self.D) ** 2 - 1.0)


def _phase_minus(theta, eta):
    # exp(-i theta) - exp(-eta), accurate when both theta and eta are small
    real = -np.expm1(-eta) - 2.0 * np.sin(0.5 * theta) ** 2
    return real - 1j * np.sin(theta)


def denominator(cavity: CavityParams, gain: GainSetting, omega):
    """Resonant denominator d(omega).

    d = 1 / ([e^{-i w tau} - r1 r2 cosh r]^2 - [r1 r2 sinh r]^2). The
    quadratic is evaluated in factored form, (e^{-i w tau} - r1 r2 e^{r})
    (e^{-i w tau} - r1 r2 e^{-r}), whose roots lie strictly inside the unit
    circle below threshold, so d is finite for all real omega.
    """
    check_gain(cavity, gain)
    theta = np.asarray(omega, dtype=float) * cavity.tau
    r_th, r = gain.r_th, gain.r
    return 1.0 / (_phase_minus(theta, r_th - r) * _phase_minus(theta, r_th + r))


def condition_hint(cavity: CavityParams, gain: GainSetting) -> float:
    """|d(0)|, which grows like 1/(r_th - r); a large value means expect lost digits."""
    return float(abs(denominator(cavity, gain, 0.0)))


def coeffs(cavity: CavityParams, gain: GainSetting, omega) -> BogoliubovCoeffs:
    """Bogoliubov coefficients A, B, C, D at angular frequency ``omega``.

    Parameters
    ----------
    cavity : CavityParams
    gain : GainSetting
        Must be below threshold for ``cavity``.
    omega : float or array_like
        Angular frequency in rad per unit time. Not reduced modulo the FSR;
        the coefficients are periodic with period 2*pi/tau.

    Returns
    -------
    BogoliubovCoeffs
    """
    omega = np.asarray(omega, dtype=float)
    d = denominator(cavity, gain, omega)
    theta = omega * cavity.tau
    phase = np.cos(theta) - 1j * np.sin(theta)
    ch, sh = np.cosh(gain.r), np.sinh(gain.r)
    t1, t2, r1, r2 = cavity.t1, cavity.t2, cavity.r1, cavity.r2

    bracket = phase * ch - cavity.q
    A = d * t1 * t1 * r2 * bracket - r1
    B = d * sh * t1 * t1 * r2 * phase
    C = d * t2 * t1 * bracket
    D = d * sh * t2 * t1 * phase
    return BogoliubovCoeffs(omega, A, B, C, D)
