"""Cavity and gain parameters shared by every part of the engine.

The cavity is a two-mirror ring: mirror 1 is the output coupler, mirror 2
lumps all remaining losses. All amplitudes are real and the cavity is on
resonance. Times are in units of the round-trip time unless ``tau`` is set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._errors import DomainError, ThresholdError


@dataclass(frozen=True)
class CavityParams:
    """Mirror amplitudes and round-trip time of the resonator.

    ``t1`` and ``t2`` are derived from ``r1`` and ``r2`` by energy
    conservation and cannot be passed in.
    """

    r1: float
    r2: float
    tau: float = 1.0
    t1: float = field(init=False)
    t2: float = field(init=False)

    def __post_init__(self):
        r1, r2, tau = float(self.r1), float(self.r2), float(self.tau)
        if not 0.0 <= r1 < 1.0:
            raise DomainError(f"r1 must satisfy 0 <= r1 < 1, got {r1!r}", "r1")
        if not 0.0 < r2 <= 1.0:
            raise DomainError(f"r2 must satisfy 0 < r2 <= 1, got {r2!r}", "r2")
        if not (tau > 0.0 and math.isfinite(tau)):
            raise DomainError(f"tau must be positive and finite, got {tau!r}", "tau")
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "t1", math.sqrt((1.0 - r1) * (1.0 + r1)))
        object.__setattr__(self, "t2", math.sqrt((1.0 - r2) * (1.0 + r2)))

    @property
    def q(self) -> float:
        """Round-trip amplitude feedback r1*r2."""
        return self.r1 * self.r2

    @property
    def fsr(self) -> float:
        """Free spectral range in angular frequency, 2*pi/tau."""
        return 2.0 * math.pi / self.tau


def make_cavity(r1: float, r2: float, tau: float = 1.0) -> CavityParams:
    return CavityParams(r1, r2, tau)


def threshold(cavity: CavityParams) -> float:
    """Single-pass squeezing amplitude at which round-trip gain equals loss.

    Infinite for an open cavity (``r1 == 0``), which never oscillates.
    """
    if cavity.r1 == 0.0:
        return math.inf
    return -(math.log(cavity.r1) + math.log(cavity.r2))


@dataclass(frozen=True)
class GainSetting:
    """Single-pass squeezing amplitude ``r`` together with its threshold."""

    r: float
    r_th: float

    def __post_init__(self):
        r, r_th = float(self.r), float(self.r_th)
        if not r_th > 0.0:
            raise DomainError(f"threshold must be positive, got {r_th!r}", "r_th")
        if not (r >= 0.0 and math.isfinite(r)):
            raise DomainError(f"gain r must be finite and >= 0, got {r!r}", "r")
        if r >= r_th:
            raise ThresholdError(
                f"gain r={r!r} is at or above threshold r_th={r_th!r}", "r"
            )
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "r_th", r_th)

    @property
    def fraction(self) -> float:
        """Gain as a fraction of threshold, r / r_th."""
        return self.r / self.r_th


def make_gain(cavity: CavityParams, r: float | None = None,
              fraction: float | None = None) -> GainSetting:
    """Build a gain setting from either an absolute ``r`` or ``fraction`` of threshold.

    Exactly one of the two must be given.
    """
    if (r is None) == (fraction is None):
        raise DomainError("give exactly one of r or fraction", "gain")
    r_th = threshold(cavity)
    if fraction is not None:
        fraction = float(fraction)
        if fraction < 0.0:
            raise DomainError(f"gain fraction must be >= 0, got {fraction!r}", "fraction")
        if fraction >= 1.0:
            raise ThresholdError(
                f"gain fraction {fraction!r} is at or above threshold", "fraction"
            )
        if math.isinf(r_th):
            raise DomainError("gain fraction is undefined for an open cavity (r1 = 0)",
                              "fraction")
        r = fraction * r_th
    return GainSetting(r, r_th)


@dataclass(frozen=True)
class PoleParams:
    """Pole locations of the line-shape kernel |d(omega)|^2 in cos(omega*tau).

    ``x = cosh(eta_x)`` and ``y = cosh(eta_y)`` with ``eta_x = r_th - r`` and
    ``eta_y = r_th + r``. Keeping the exponents avoids the cancellation in
    ``x - 1`` near threshold and in ``y - x`` at small gain. Note ``y >= x``;
    ``x`` is the pole that approaches 1 at threshold.
    """

    x: float
    y: float
    eta_x: float
    eta_y: float

    @property
    def rho_x(self) -> float:
        return math.exp(-self.eta_x)

    @property
    def rho_y(self) -> float:
        return math.exp(-self.eta_y)

    @property
    def r(self) -> float:
        return 0.5 * (self.eta_y - self.eta_x)


def pole_params(cavity: CavityParams, gain: GainSetting) -> PoleParams:
    check_gain(cavity, gain)
    if cavity.r1 == 0.0:
        raise DomainError("pole parameters are undefined for r1*r2 = 0", "r1")
    eta_x = gain.r_th - gain.r
    eta_y = gain.r_th + gain.r
    return PoleParams(math.cosh(eta_x), math.cosh(eta_y), eta_x, eta_y)


def check_gain(cavity: CavityParams, gain: GainSetting) -> None:
    """Raise ThresholdError unless ``gain`` is sub-threshold for ``cavity``."""
    r_th = threshold(cavity)
    if not math.isclose(gain.r_th, r_th, rel_tol=1e-12) and not (
        math.isinf(r_th) and math.isinf(gain.r_th)
    ):
        raise DomainError(
            f"gain setting was built for r_th={gain.r_th!r}, cavity has r_th={r_th!r}",
            "gain",
        )
    if gain.r >= r_th:
        raise ThresholdError(f"gain r={gain.r!r} is at or above threshold {r_th!r}", "r")
