"""Time-domain second-moment recursion over cavity round trips.

Works directly on the difference equation for the intracavity field just
before the output coupler,

    a(t) = g a(t-tau) + h a^+(t-tau) + t1 r2 [cosh r u + sinh r u^+]
           + t2 [cosh r v + sinh r v^+],          g, h = r1 r2 (cosh r, sinh r)

with u = a_in(t-tau), v = b_in(t-tau) fresh vacuum every round trip, and
a_out(t) = -r1 a_in(t) + t1 a(t). Gaussian states are closed under this map,
so the moments n = <a^+ a> and m = <a a> evolve exactly. Nothing here is
shared with the frequency-domain modules, which makes it a check on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._errors import ConvergenceError, DomainError
from .comb import CorrelationComb
from .params import CavityParams, GainSetting, check_gain


@dataclass(frozen=True)
class MomentState:
    n: float
    m: float

    def is_physical(self, atol: float = 1e-12) -> bool:
        """|m|^2 <= n (n + 1), up to a relative ``atol``."""
        return abs(self.m) ** 2 <= self.n * (self.n + 1.0) * (1.0 + atol) + atol


@dataclass(frozen=True)
class OutputCorrelators:
    """Lag-k output correlators, k = 0..k_max, in units of the round-trip delta."""

    normal: np.ndarray       # <a_out^+(t) a_out(t + k tau)>
    anomalous: np.ndarray    # <a_out(t) a_out(t + k tau)>
    tau: float
    gain_fraction: float

    @property
    def n_out(self) -> float:
        return float(self.normal[0])


def field_transfer(cavity: CavityParams, r: float) -> np.ndarray:
    """Round-trip map of (a, a^+): [[g, h], [h, g]]."""
    g = cavity.q * math.cosh(r)
    h = cavity.q * math.sinh(r)
    return np.array([[g, h], [h, g]])


def moment_map_linear_part(cavity: CavityParams, r: float):
    """Linear part L and vacuum drive c of (n, m) -> L (n, m) + c.

    Takes a bare ``r`` so it can be probed at and above threshold.
    """
    g = cavity.q * math.cosh(r)
    h = cavity.q * math.sinh(r)
    ch, sh = math.cosh(r), math.sinh(r)
    # both input channels together inject (t1^2 r2^2 + t2^2) = 1 - q^2 of vacuum
    feed = (cavity.t1 * cavity.r2) ** 2 + cavity.t2 ** 2
    L = np.array([[g * g + h * h, 2.0 * g * h],
                  [2.0 * g * h, g * g + h * h]])
    c = np.array([h * h + feed * sh * sh, g * h + feed * sh * ch])
    return L, c


def spectral_radius(cavity: CavityParams, r: float) -> float:
    L, _ = moment_map_linear_part(cavity, r)
    return float(max(abs(np.linalg.eigvals(L))))


def roundtrip_moment_map(state: MomentState, cavity: CavityParams,
                         gain: GainSetting) -> MomentState:
    check_gain(cavity, gain)
    L, c = moment_map_linear_part(cavity, gain.r)
    n, m = L @ np.array([state.n, state.m]) + c
    return MomentState(float(n), float(m))


def steady_state_closed(cavity: CavityParams, gain: GainSetting) -> MomentState:
    """Fixed point of the moment map from the 2x2 linear system."""
    check_gain(cavity, gain)
    L, c = moment_map_linear_part(cavity, gain.r)
    n, m = np.linalg.solve(np.eye(2) - L, c)
    return MomentState(float(n), float(m))


def steady_state(cavity: CavityParams, gain: GainSetting, tol: float = 1e-14,
                 max_iter: int = 10_000_000, start: MomentState | None = None) -> MomentState:
    """Iterate the round-trip moment map from vacuum until it stops changing.

    Stops when successive (n, m) differ by less than ``tol`` relative to
    max(1, n). Raises ConvergenceError after ``max_iter`` round trips, which
    happens only very close to threshold.
    """
    if not tol > 0:
        raise DomainError("tol must be positive", "tol")
    check_gain(cavity, gain)
    L, c = moment_map_linear_part(cavity, gain.r)
    (a, b), (_, _) = L
    cn, cm = c
    n, m = (0.0, 0.0) if start is None else (start.n, start.m)
    for _ in range(max_iter):
        n_new = a * n + b * m + cn
        m_new = b * n + a * m + cm
        change = max(abs(n_new - n), abs(m_new - m))
        n, m = float(n_new), float(m_new)
        if change < tol * max(1.0, n):
            return MomentState(n, m)
    raise ConvergenceError(
        f"moment iteration did not settle within {max_iter} round trips", change)


def two_time_output_correlators(cavity: CavityParams, gain: GainSetting, k_max: int,
                                method: str = "closed") -> OutputCorrelators:
    """Exact output correlators at lags 0..k_max round trips.

    For lag k >= 1 the intracavity field propagates as
    a(t + k tau) = [P^k]_00 a(t) + [P^k]_01 a^+(t) + (inputs after t),
    with P the round-trip transfer matrix. The input a_in(t) leaves directly
    through the coupler as -r1 a_in(t) but was also injected into the cavity,
    so <a_out(t) a_out(t + k tau)> picks up -r1 t1 times the a_in^+(t)
    amplitude carried by a(t + k tau). The normal-ordered correlator has no
    such term because <vac| a_in^+ = 0.
    """
    if k_max < 0:
        raise DomainError("k_max must be >= 0", "k_max")
    state = steady_state_closed(cavity, gain) if method == "closed" \
        else steady_state(cavity, gain)
    n, m = state.n, state.m
    t1, r1, r2 = cavity.t1, cavity.r1, cavity.r2
    ch, sh = math.cosh(gain.r), math.sinh(gain.r)
    P = field_transfer(cavity, gain.r)

    normal = np.empty(k_max + 1)
    anomalous = np.empty(k_max + 1)
    normal[0] = t1 * t1 * n
    anomalous[0] = t1 * t1 * m
    prop = np.eye(2)
    # (coefficient of a_in^+(t) in a(t+tau), in a^+(t+tau))
    injected = np.array([t1 * r2 * sh, t1 * r2 * ch])
    for k in range(1, k_max + 1):
        prop = P @ prop
        normal[k] = t1 * t1 * (prop[0, 0] * n + prop[0, 1] * m)
        anomalous[k] = (t1 * t1 * (prop[0, 0] * m + prop[0, 1] * (n + 1.0))
                        - r1 * t1 * injected[0])
        injected = P @ injected
    return OutputCorrelators(normal, anomalous, cavity.tau, gain.fraction)


def g2_from_moments(correlators: OutputCorrelators,
                    n_out: float | None = None) -> CorrelationComb:
    """Wick-factorized G2 comb, normalized so that the zero-lag weight is 1.

    Peak weights are |<a a>_k|^2 + |<a^+ a>_k|^2 and the background is the
    squared photon flux. Only the ratios are meaningful, so the result is
    scale-free.
    """
    if n_out is None:
        n_out = correlators.n_out
    w = np.abs(correlators.anomalous) ** 2 + np.abs(correlators.normal) ** 2
    b = float(n_out) ** 2
    if w[0] > 0:
        w, b = w / w[0], b / w[0]
    return CorrelationComb(w, b, correlators.tau, correlators.gain_fraction)
