import math

import numpy as np
import pytest

from cespdc import (gamma_fn, make_cavity, make_gain, optimal_squeezing, squeezing_spectrum,
                    upsilon_fn)
from cespdc.spectra import gamma_assembled, spectral_sample, upsilon_assembled

W = np.linspace(-math.pi, math.pi, 121)


def test_zero_gain_vanishes(mid_cavity):
    gain = make_gain(mid_cavity, r=0.0)
    assert np.all(gamma_fn(mid_cavity, gain, W) == 0)
    assert np.all(upsilon_fn(mid_cavity, gain, W) == 0)


def test_even_and_periodic(mid_cavity, mid_gain):
    for fn in (gamma_fn, upsilon_fn):
        np.testing.assert_allclose(fn(mid_cavity, mid_gain, -W), fn(mid_cavity, mid_gain, W),
                                   rtol=1e-14)
        np.testing.assert_allclose(fn(mid_cavity, mid_gain, W + 2 * math.pi),
                                   fn(mid_cavity, mid_gain, W), rtol=1e-12)


def test_lossless_upsilon_positive():
    cav = make_cavity(0.9, 1.0)
    assert np.all(upsilon_fn(cav, make_gain(cav, fraction=0.3), W) > 0)


@pytest.mark.parametrize("r1, r2, frac", [(0.9, 0.9, 0.5), (0.5, 0.7, 0.9), (0.99, 0.98, 0.05),
                                          (0.3, 0.999, 0.99)])
def test_dual_path(r1, r2, frac):
    cav = make_cavity(r1, r2)
    gain = make_gain(cav, fraction=frac)
    g_ass = gamma_assembled(cav, gain, W)
    u_ass = upsilon_assembled(cav, gain, W)
    g = gamma_fn(cav, gain, W)
    u = upsilon_fn(cav, gain, W)
    np.testing.assert_allclose(g_ass.real, g, rtol=1e-12)
    np.testing.assert_allclose(u_ass.real, u, rtol=1e-12)
    assert np.max(np.abs(g_ass.imag)) < 1e-14 * max(1.0, np.max(np.abs(g)))
    assert np.max(np.abs(u_ass.imag)) < 1e-14 * max(1.0, np.max(np.abs(u)))


def test_signs(mid_cavity, mid_gain):
    s = spectral_sample(mid_cavity, mid_gain, W)
    assert np.all(s.upsilon_val > 0)
    assert np.all(s.gamma_val > 0)


def test_vacuum_is_unity(mid_cavity):
    gain = make_gain(mid_cavity, r=0.0)
    for theta in (0.0, 0.7, math.pi):
        np.testing.assert_allclose(squeezing_spectrum(mid_cavity, gain, W, theta), 1.0,
                                   atol=1e-13)


def test_lossless_minimum_uncertainty():
    cav = make_cavity(0.8, 1.0)
    gain = make_gain(cav, fraction=0.6)
    prod = squeezing_spectrum(cav, gain, W, 0.0) * squeezing_spectrum(cav, gain, W, math.pi)
    np.testing.assert_allclose(prod, 1.0, atol=1e-10)


def test_lossy_uncertainty(mid_cavity, mid_gain):
    prod = (squeezing_spectrum(mid_cavity, mid_gain, W, 0.0)
            * squeezing_spectrum(mid_cavity, mid_gain, W, math.pi))
    assert prod.min() >= 1.0 - 1e-12


def test_best_squeezing_on_resonance(mid_cavity, mid_gain):
    s_min, theta = optimal_squeezing(mid_cavity, mid_gain, W)
    assert np.all(s_min > 0)
    assert W[np.argmin(s_min)] == pytest.approx(0.0, abs=1e-12)
    assert s_min.min() < 1.0
    # the reported angle really is the minimiser
    grid = np.linspace(0, 2 * math.pi, 721)
    brute = squeezing_spectrum(mid_cavity, mid_gain, 0.0, grid)
    assert s_min[60] == pytest.approx(brute.min(), rel=1e-5)
    assert squeezing_spectrum(mid_cavity, mid_gain, 0.0, theta[60]) == pytest.approx(
        s_min[60], rel=1e-12)
