from __future__ import annotations

import math

import numpy as np
import pytest

import quadbath.linear_bath as lb
from quadbath.fdt import SpectralFunction, imchi_from_cf
from quadbath.linear_bath import (
    LinearCase,
    force_psd_linear,
    imchi_linear,
    imresponse_linear,
    log_slope,
    msd_linear,
)

A, B = LinearCase("A"), LinearCase("B")


def test_psd_values():
    assert force_psd_linear(A, 2.0) == pytest.approx(2.0)
    assert force_psd_linear(B, 2.0) == pytest.approx(8.0)
    assert force_psd_linear(LinearCase("A", g=3.0), 2.0) == pytest.approx(18.0)


def test_psd_positive_frequencies_only():
    with pytest.raises(ValueError):
        force_psd_linear(A, 0.0)


def test_imchi_values():
    assert imchi_linear(A, -2.0) == pytest.approx(-2.0)
    assert imchi_linear(B, 1.0) == pytest.approx(1.0)


@pytest.mark.parametrize("case", [A, B, LinearCase("B", g=0.3)])
def test_imchi_is_fdt_image_of_psd(case):
    cf = SpectralFunction.closed(lambda w: force_psd_linear(case, w))
    chi = imchi_from_cf(cf, 0.0)
    w = np.linspace(-5, 5, 41)
    w = w[w != 0]
    np.testing.assert_allclose(chi(w), imchi_linear(case, w), rtol=1e-14)


def test_friction_forms():
    w = np.geomspace(1e-6, 1e-3, 5)
    ratio_a = imchi_linear(A, w) / w
    ratio_b = imchi_linear(B, w) / w**3
    assert np.all(ratio_a > 0) and np.ptp(ratio_a) < 1e-12
    assert np.all(ratio_b > 0) and np.ptp(ratio_b) < 1e-12


def test_invalid_case():
    with pytest.raises(ValueError):
        LinearCase("C")
    with pytest.raises(ValueError):
        LinearCase("A", g=0.0)


def test_response_small_frequency():
    w = 1e-6
    assert imresponse_linear(A, 1.0)(w) * w == pytest.approx(1.0, rel=1e-9)
    assert imresponse_linear(B, 2.0)(w) * w == pytest.approx(1 / 4, rel=1e-9)
    # case A explicit form w / (w^4 + w^2) at m = g = 1
    assert imresponse_linear(A, 1.0)(0.5) == pytest.approx(0.5 / (0.5**4 + 0.5**2))


@pytest.mark.parametrize("case,m,expected", [(A, 1.0, 2 / math.pi), (B, 1.0, 2 / math.pi),
                                             (B, 2.0, 2 / (math.pi * 4))])
def test_msd_log_slope(cfg, case, m, expected):
    _, slope = msd_linear(case, m, 1e2, cfg)
    assert slope == pytest.approx(expected, rel=1e-3)


def test_doubling_mass_quarters_slope(cfg):
    s1 = msd_linear(B, 1.0, 1e2, cfg)[1]
    s2 = msd_linear(B, 2.0, 1e2, cfg)[1]
    assert s2 / s1 == pytest.approx(0.25, rel=1e-3)


@pytest.mark.parametrize("case", [A, B])
def test_slope_stable_across_decades(cfg, case):
    imR = imresponse_linear(case, 1.0)
    first = log_slope(imR, 1e1, 1e2, cfg)
    second = log_slope(imR, 1e2, 1e3, cfg)
    assert abs(first / second - 1) < 0.02


def test_msd_needs_long_times(cfg):
    with pytest.raises(ValueError):
        msd_linear(A, 1.0, 1.0, cfg)


def test_no_higher_cumulants_exposed():
    assert not [name for name in dir(lb) if "cumulant" in name.lower()]
