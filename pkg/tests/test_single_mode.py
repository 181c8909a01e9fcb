import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from cespdc import (SingleModeParams, ThresholdError, compare_models, from_cavity, g2_comb,
                    g2_envelope_normalized, g2_multi_finite_n, g2_single, g2_single_assembled,
                    make_cavity, make_gain, scan_models, threshold)
from cespdc.single_mode import model_envelopes, rate_mapping


class TestRateMapping:
    def test_amplitude_convention_example(self):
        cav = make_cavity(math.exp(-0.05), 0.9)
        gain = make_gain(cav, r=0.0)
        assert from_cavity(cav, gain, "amplitude").gamma1 == pytest.approx(0.05, rel=1e-13)
        assert from_cavity(cav, gain).gamma1 == pytest.approx(0.10, rel=1e-13)

    def test_zero_gain(self, mid_cavity):
        assert from_cavity(mid_cavity, make_gain(mid_cavity, r=0.0)).epsilon == 0.0

    @pytest.mark.parametrize("convention", ["energy", "amplitude"])
    def test_threshold_maps_to_rate_threshold(self, convention):
        cav = make_cavity(0.8, 0.95, tau=2.0)
        g1, g2, eps = rate_mapping(cav, threshold(cav), convention)
        assert eps == pytest.approx(0.5 * (g1 + g2), rel=1e-14)

    def test_rate_threshold_enforced(self):
        with pytest.raises(ThresholdError):
            SingleModeParams(1.0, 1.0, 1.0)

    def test_dimensional_rates(self):
        a = from_cavity(make_cavity(0.9, 0.9, 1.0), make_gain(make_cavity(0.9, 0.9), fraction=0.3))
        cav = make_cavity(0.9, 0.9, 1e-9)
        b = from_cavity(cav, make_gain(cav, fraction=0.3))
        assert b.gamma1 == pytest.approx(a.gamma1 * 1e9, rel=1e-14)
        assert b.epsilon == pytest.approx(a.epsilon * 1e9, rel=1e-14)


class TestG2Single:
    def test_no_gain_no_pairs(self):
        assert np.all(g2_single(SingleModeParams(1.0, 0.5, 0.0), np.linspace(-5, 5, 11)) == 0)

    def test_even(self):
        p = SingleModeParams(0.3, 0.5, 0.2)
        T = np.linspace(0, 30, 31)
        np.testing.assert_array_equal(g2_single(p, T), g2_single(p, -T))

    def test_pinned_value(self):
        mpmath.mp.dps = 30
        fm, fp = mpmath.mpf(1) / mpmath.mpf("1.5"), mpmath.mpf(1) / mpmath.mpf("2.5")
        eps = mpmath.mpf("0.25")
        ref = mpmath.pi / 2 * eps ** 2 * ((fm + fp) ** 2 + 2 * (fm - fp) ** 2)
        assert g2_single(SingleModeParams(1.0, 1.0, 0.25), 0.0) == pytest.approx(float(ref), rel=1e-15)
        assert float(ref) == pytest.approx(math.pi / 25, rel=1e-15)

    def test_decreasing_to_constant(self):
        p = SingleModeParams(1.0, 0.5, 0.3)
        g = g2_single(p, np.linspace(0, 60, 301))
        assert np.all(np.diff(g) <= 0)
        f0m, f0p = 1 / (1.5 - 0.6), 1 / (1.5 + 0.6)
        floor = 0.5 * math.pi * 0.09 * (f0m - f0p) ** 2
        assert g[-1] == pytest.approx(floor, rel=1e-9)

    def test_slow_time_constant(self):
        g1, g2, eps = 0.7, 0.4, 0.3
        p = SingleModeParams(g1, g2, eps)
        floor = g2_single(p, 1e6)
        T1, T2 = 30.0, 40.0
        slope = (math.log(g2_single(p, T2) - floor) - math.log(g2_single(p, T1) - floor)) / (T2 - T1)
        assert -1 / slope == pytest.approx(1 / (g1 + g2 - 2 * eps), rel=1e-6)

    def test_background_ratio_grows_with_gain(self):
        ratios = []
        for eps in np.linspace(0.01, 0.99, 20):
            p = SingleModeParams(1.0, 1.0, eps)
            ratios.append(g2_single(p, 1e9) / g2_single(p, 0.0))
        assert np.all(np.diff(ratios) > 0)

    def test_dual_path(self):
        p = SingleModeParams(1.0, 1.0, 0.25)
        T = np.array([0.0, 1.3, 7.0])
        np.testing.assert_allclose(g2_single_assembled(p, T), g2_single(p, T), rtol=1e-9)


class TestFiniteModes:
    P = SingleModeParams(0.2, 0.1, 0.05)

    def test_single_mode_is_identity(self):
        T = np.linspace(-3.3, 3.3, 67)
        np.testing.assert_allclose(g2_multi_finite_n(self.P, 0, T), g2_single(self.P, T), rtol=1e-12)

    @pytest.mark.parametrize("N", [1, 4, 25])
    def test_peaks(self, N):
        T = np.arange(-3, 4, dtype=float)
        np.testing.assert_allclose(g2_multi_finite_n(self.P, N, T),
                                   g2_single(self.P, T) * (2 * N + 1) ** 2, rtol=1e-12)

    def test_zeros(self):
        N = 3
        T = np.array([j / 7 for j in range(1, 7)] + [1 + j / 7 for j in range(1, 7)])
        assert np.max(np.abs(g2_multi_finite_n(self.P, N, T))) < 1e-25 * g2_single(self.P, 0.0)

    def test_large_n_integrates_to_comb(self):
        cav = make_cavity(0.99, 0.99)
        gain = make_gain(cav, fraction=0.01)
        sm = from_cavity(cav, gain)
        N, K = 1000, 30
        t = np.linspace(-0.5, 0.5, 400_001)
        areas = np.array([integrate.simpson(g2_multi_finite_n(sm, N, k + t), x=t) for k in range(K + 1)])
        env = g2_envelope_normalized(g2_comb(cav, gain, K))[1]
        np.testing.assert_allclose(areas / areas[0], env, rtol=0.01)


class TestComparison:
    def test_high_finesse_agreement(self):
        cav = make_cavity(0.99, 0.99)
        assert compare_models(cav, make_gain(cav, fraction=0.01)) < 0.01

    def test_low_reflectivity_worse(self):
        hi = make_cavity(0.99, 0.99)
        lo = make_cavity(0.3, 0.9)
        assert (compare_models(lo, make_gain(lo, fraction=0.5))
                > 100 * compare_models(hi, make_gain(hi, fraction=0.5)))

    def test_envelopes_normalized(self, mid_cavity, mid_gain):
        times, multi, single = model_envelopes(mid_cavity, mid_gain)
        assert multi[0] == 1.0 and single[0] == 1.0
        assert len(times) == len(multi) == len(single)

    def test_amplitude_convention_decays_slower(self):
        cav = make_cavity(0.95, 0.95)
        gain = make_gain(cav, fraction=0.05)
        _, multi, single = model_envelopes(cav, gain, 20, "amplitude")
        assert single[10] > multi[10] + 0.1
        assert compare_models(cav, gain, 20, convention="amplitude") > 0.1

    def test_pointwise_metric_at_least_peak(self, mid_cavity, mid_gain):
        peak = compare_models(mid_cavity, mid_gain)
        assert compare_models(mid_cavity, mid_gain, metric="pointwise") >= peak

    def test_scan_order(self):
        rows = scan_models([0.6, 0.9], [0.7], [0.1, 0.5])
        assert [r[:3] for r in rows] == [(0.6, 0.7, 0.1), (0.6, 0.7, 0.5),
                                         (0.9, 0.7, 0.1), (0.9, 0.7, 0.5)]
