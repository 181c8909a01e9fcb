import math

import mpmath
import numpy as np
import pytest

from cespdc import (DomainError, GainSetting, ThresholdError, make_cavity, make_gain,
                    pole_params, threshold)


class TestMakeCavity:
    def test_open_cavity(self):
        cav = make_cavity(0.0, 1.0, 1.0)
        assert cav.t1 == 1.0
        assert cav.t2 == 0.0

    def test_symmetric_mid_finesse(self):
        cav = make_cavity(0.9, 0.9, 1.0)
        expected = float(mpmath.sqrt(mpmath.mpf(1) - mpmath.mpf("0.81")))
        assert cav.t1 == pytest.approx(expected, rel=1e-15)
        assert cav.t2 == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("r1, r2, tau, name", [
        (1.0, 0.9, 1.0, "r1"),
        (-0.1, 0.9, 1.0, "r1"),
        (0.9, 0.0, 1.0, "r2"),
        (0.9, 1.1, 1.0, "r2"),
        (0.9, 0.9, 0.0, "tau"),
    ])
    def test_rejects_out_of_range(self, r1, r2, tau, name):
        with pytest.raises(DomainError) as info:
            make_cavity(r1, r2, tau)
        assert info.value.parameter == name

    @pytest.mark.parametrize("r1, r2", [(0.0, 1.0), (0.1, 0.3), (0.5, 0.5), (0.999, 0.999)])
    def test_energy_conservation(self, r1, r2):
        cav = make_cavity(r1, r2)
        assert cav.r1 ** 2 + cav.t1 ** 2 == pytest.approx(1.0, abs=2e-16)
        assert cav.r2 ** 2 + cav.t2 ** 2 == pytest.approx(1.0, abs=2e-16)


class TestThreshold:
    def test_log_exp(self):
        cav = make_cavity(math.exp(-0.04), math.exp(-0.06))
        assert threshold(cav) == pytest.approx(0.1, rel=1e-14)

    def test_mid_finesse(self):
        cav = make_cavity(0.9, 0.9)
        assert threshold(cav) == pytest.approx(-math.log(0.81), rel=1e-15)
        assert threshold(cav) == pytest.approx(2 * -math.log(0.9), rel=1e-15)

    def test_half(self):
        assert threshold(make_cavity(0.5, 1.0)) == pytest.approx(math.log(2), rel=1e-15)

    def test_symmetric_and_decreasing(self):
        assert threshold(make_cavity(0.6, 0.8)) == threshold(make_cavity(0.8, 0.6))
        values = [threshold(make_cavity(r, 0.95)) for r in np.linspace(0.1, 0.99, 20)]
        assert np.all(np.diff(values) < 0)

    def test_open_cavity_never_oscillates(self):
        assert math.isinf(threshold(make_cavity(0.0, 1.0)))


class TestGain:
    def test_fraction_resolves_to_absolute(self, mid_cavity):
        gain = make_gain(mid_cavity, fraction=0.01)
        assert gain.r == pytest.approx(0.01 * -math.log(0.81), rel=1e-15)
        assert gain.fraction == pytest.approx(0.01)

    def test_exactly_one_gain_given(self, mid_cavity):
        with pytest.raises(DomainError):
            make_gain(mid_cavity)
        with pytest.raises(DomainError):
            make_gain(mid_cavity, r=0.1, fraction=0.1)

    @pytest.mark.parametrize("frac", [1.0, 1.5])
    def test_at_or_above_threshold(self, mid_cavity, frac):
        with pytest.raises(ThresholdError):
            make_gain(mid_cavity, fraction=frac)
        with pytest.raises(ThresholdError):
            make_gain(mid_cavity, r=frac * threshold(mid_cavity))

    def test_negative_gain(self, mid_cavity):
        with pytest.raises(DomainError):
            make_gain(mid_cavity, r=-0.01)


class TestPoles:
    def test_zero_gain(self, mid_cavity):
        pole = pole_params(mid_cavity, make_gain(mid_cavity, r=0.0))
        q = 0.81
        assert pole.x == pytest.approx((1 + q * q) / (2 * q), rel=1e-15)
        assert pole.y == pytest.approx(pole.x, rel=1e-15)

    def test_direct_formula(self, mid_cavity, mid_gain):
        mpmath.mp.dps = 40
        q = mpmath.mpf("0.9") ** 2
        r = mpmath.mpf("0.5") * -mpmath.log(q)
        x = (1 + q ** 2 * mpmath.e ** (2 * r)) / (2 * q * mpmath.e ** r)
        y = (1 + q ** 2 * mpmath.e ** (-2 * r)) / (2 * q * mpmath.e ** (-r))
        pole = pole_params(mid_cavity, mid_gain)
        assert pole.x == pytest.approx(float(x), rel=1e-14)
        assert pole.y == pytest.approx(float(y), rel=1e-14)
        # the pole that reaches 1 at threshold is x; the other sits further out
        assert pole.y > pole.x > 1.0

    def test_at_threshold_rejected(self, mid_cavity):
        with pytest.raises(ThresholdError):
            GainSetting(threshold(mid_cavity), threshold(mid_cavity))

    @pytest.mark.parametrize("r", [1e-12, 1e-9, 1e-6, 1e-3])
    def test_pole_gap_closes_linearly(self, mid_cavity, r):
        # y - x = 2 sinh(r_th) sinh(r), so the gap vanishes like r
        pole = pole_params(mid_cavity, make_gain(mid_cavity, r=r))
        gap = 2 * math.sinh(threshold(mid_cavity)) * math.sinh(r)
        assert pole.y - pole.x == pytest.approx(gap, rel=1e-6, abs=1e-15)

    def test_dominant_ratio(self, mid_cavity, mid_gain):
        pole = pole_params(mid_cavity, mid_gain)
        assert pole.rho_x == pytest.approx(0.81 * math.exp(mid_gain.r), rel=1e-14)
        assert pole.rho_x == pytest.approx(pole.x - math.sqrt(pole.x ** 2 - 1), rel=1e-12)
