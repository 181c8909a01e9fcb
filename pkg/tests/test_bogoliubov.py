import math

import mpmath
import numpy as np
import pytest

from cespdc import coeffs, condition_hint, denominator, make_cavity, make_gain, threshold


def test_denominator_zero_gain_resonance(mid_cavity):
    gain = make_gain(mid_cavity, r=0.0)
    assert denominator(mid_cavity, gain, 0.0) == pytest.approx(1 / (1 - 0.81) ** 2, rel=1e-13)


def test_denominator_zero_gain_antiresonance(mid_cavity):
    gain = make_gain(mid_cavity, r=0.0)
    assert denominator(mid_cavity, gain, math.pi) == pytest.approx(1 / (1 + 0.81) ** 2, rel=1e-13)


def test_denominator_against_direct_expression(mid_cavity, mid_gain):
    mpmath.mp.dps = 40
    q = mpmath.mpf("0.81")
    r = mpmath.mpf(mid_gain.r)
    ph = mpmath.exp(-1j * mpmath.mpf("0.3"))
    direct = 1 / ((ph - q * mpmath.cosh(r)) ** 2 - (q * mpmath.sinh(r)) ** 2)
    # same quantity multiplied out the other way round
    other = 1 / (ph * ph - 2 * q * mpmath.cosh(r) * ph + q * q)
    assert abs(direct - other) < 1e-30
    d = denominator(mid_cavity, mid_gain, 0.3)
    assert abs(d - complex(direct)) < 1e-13 * abs(d)
    assert denominator(mid_cavity, mid_gain, -0.3) == pytest.approx(np.conj(d), rel=1e-14)


def test_zero_gain_has_no_conjugate_terms(mid_cavity):
    c = coeffs(mid_cavity, make_gain(mid_cavity, r=0.0), np.linspace(-3, 3, 31))
    assert np.all(c.B == 0) and np.all(c.D == 0)


def test_periodic_in_fsr(mid_cavity, mid_gain):
    w = np.linspace(-2.0, 2.0, 41)
    a = coeffs(mid_cavity, mid_gain, w)
    b = coeffs(mid_cavity, mid_gain, w + 2 * math.pi / mid_cavity.tau)
    for name in "ABCD":
        np.testing.assert_allclose(getattr(b, name), getattr(a, name), rtol=1e-12)


def test_hermitian_function(mid_cavity, mid_gain):
    w = np.linspace(0.01, 3.0, 25)
    a = coeffs(mid_cavity, mid_gain, w)
    b = coeffs(mid_cavity, mid_gain, -w)
    for name in "ABCD":
        np.testing.assert_allclose(getattr(b, name), np.conj(getattr(a, name)), rtol=1e-13)


def test_unitarity_mid_finesse(mid_cavity, mid_gain):
    c = coeffs(mid_cavity, mid_gain, np.linspace(-math.pi, math.pi, 201))
    assert np.max(np.abs(c.unitarity_defect())) < 1e-12


def test_lossless_limit():
    cav = make_cavity(0.9, 1.0)
    c = coeffs(cav, make_gain(cav, fraction=0.7), np.linspace(-3, 3, 61))
    assert np.all(c.C == 0) and np.all(c.D == 0)
    np.testing.assert_allclose(abs(c.A) ** 2 - abs(c.B) ** 2, 1.0, atol=1e-12)


def test_condition_hint_grows_toward_threshold(mid_cavity):
    r_th = threshold(mid_cavity)
    hints = [condition_hint(mid_cavity, make_gain(mid_cavity, r=r))
             for r in np.linspace(0, 0.999 * r_th, 50)]
    assert np.all(np.diff(hints) > 0)


def test_threshold_scaling_of_hint(mid_cavity):
    r_th = threshold(mid_cavity)
    small = condition_hint(mid_cavity, make_gain(mid_cavity, r=r_th - 1e-4))
    smaller = condition_hint(mid_cavity, make_gain(mid_cavity, r=r_th - 1e-5))
    assert smaller / small == pytest.approx(10.0, rel=1e-3)
