from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import sici

from quadbath.core import QuadratureConfig
from quadbath.fdt import (
    SpectralFunction,
    a4_integral,
    cf_from_imchi,
    imchi_from_cf,
    msd_from_imresponse,
    msd_realtime_a4,
)

GRID = np.geomspace(1e-4, 1e3, 400)


def inverse_omega_msd(uv, t):
    # (2/pi) int_0^uv (1 - cos wt)/w dw = (2/pi)(gamma_E + ln(uv t) - Ci(uv t))
    return 2 / math.pi * (np.euler_gamma + math.log(uv * t) - sici(uv * t)[1])


class TestSpectralFunction:
    def test_parity_extension(self):
        f = SpectralFunction.closed(lambda w: w**2, parity="odd")
        assert f(-2.0) == -4.0
        g = SpectralFunction.closed(lambda w: w**2, parity="even")
        assert g(-2.0) == 4.0

    def test_no_parity_rejects_negative(self):
        f = SpectralFunction.closed(lambda w: w)
        with pytest.raises(ValueError):
            f(-1.0)

    def test_sampled_validation(self):
        with pytest.raises(ValueError):
            SpectralFunction.sampled([1.0, 0.5], [1.0, 2.0])
        with pytest.raises(ValueError):
            SpectralFunction.sampled([0.0, 1.0], [1.0, 2.0])
        with pytest.raises(ValueError):
            SpectralFunction.sampled([1.0, 2.0], [1.0, np.nan])
        with pytest.raises(ValueError):
            SpectralFunction(func=lambda w: w, omega=np.array([1.0]), values=np.array([1.0]))

    def test_sampled_interpolates(self):
        f = SpectralFunction.sampled([1.0, 3.0], [2.0, 6.0])
        assert f(2.0) == pytest.approx(4.0)
        assert f.uv_cutoff == 3.0


class TestConversions:
    def test_cubic_zero_temperature(self):
        chi = imchi_from_cf(lambda w: w**3, 0.0)
        w = np.array([0.5, 1.0, 2.0])
        np.testing.assert_allclose(chi(w), w**3)
        np.testing.assert_allclose(chi(-w), -(w**3))

    def test_linear_zero_temperature(self):
        assert imchi_from_cf(lambda w: w, 0.0)(0.7) == pytest.approx(0.7)

    def test_high_temperature_constant_spectrum(self):
        c0, T = 3.0, 100.0
        chi = imchi_from_cf(lambda w: c0 * np.ones_like(w), T)
        for w in (0.01, 0.1, 1.0):
            assert chi(w) == pytest.approx(w / (2 * T) * c0, rel=1e-4)

    def test_zero_frequency_limit(self):
        T = 0.7
        cf = cf_from_imchi(lambda w: T**2 * w, T)
        assert cf(0.0) == pytest.approx(2 * T**3, rel=1e-8)
        assert cf(1e-3) == pytest.approx(2 * T**3, rel=1e-5)

    def test_divergent_zero_limit(self):
        cf = cf_from_imchi(lambda w: np.ones_like(w), 1.0)
        with pytest.raises(ValueError):
            cf(0.0)

    def test_cubic_inverse_zero_temperature(self):
        assert cf_from_imchi(lambda w: w**3, 0.0)(2.0) == pytest.approx(8.0)

    def test_negative_temperature(self):
        with pytest.raises(ValueError):
            imchi_from_cf(lambda w: w, -1.0)

    @pytest.mark.parametrize("T", [0.0, 1e-3, 0.5, 1.0, 10.0, 1e3])
    def test_round_trip_sampled(self, T):
        cf = SpectralFunction.sampled(GRID, GRID**3 + 0.1)
        back = cf_from_imchi(imchi_from_cf(cf, T), T)
        np.testing.assert_allclose(back.values, cf.values, rtol=1e-12)

    def test_output_parity(self):
        chi = imchi_from_cf(lambda w: 1 + w**2, 0.3)
        w = np.linspace(0.1, 5, 20)
        np.testing.assert_allclose(chi(-w), -chi(w))


@settings(max_examples=50, deadline=None)
@given(
    st.floats(0.0, 50.0),
    st.lists(st.floats(1e-3, 1e3), min_size=2, max_size=30, unique=True),
    st.floats(0.5, 3.0),
)
def test_round_trip_property(T, freqs, power):
    w = np.sort(np.array(freqs))
    cf = SpectralFunction.sampled(w, w**power)
    back = cf_from_imchi(imchi_from_cf(cf, T), T)
    np.testing.assert_allclose(back.values, cf.values, rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-2, 10.0), st.floats(1e-2, 10.0), st.floats(0.01, 10.0))
def test_temperature_monotonicity(T1, T2, w):
    lo, hi = sorted((T1, T2))
    cf = SpectralFunction.closed(lambda x: x**3)
    assert imchi_from_cf(cf, hi)(w) <= imchi_from_cf(cf, lo)(w)


class TestMSD:
    def test_inverse_omega_reference(self, cfg):
        value = msd_from_imresponse(SpectralFunction.closed(lambda w: 1 / w, "odd"), 1e2, cfg)
        assert value == pytest.approx(inverse_omega_msd(1e3, 1e2), rel=1e-9)
        # the asymptotic form without the Ci term
        assert value == pytest.approx(2 / math.pi * (math.log(1e5) + np.euler_gamma), rel=1e-3)

    @pytest.mark.parametrize("t", [0.01, 1.0, 30.0, 1e4])
    def test_inverse_omega_over_times(self, cfg, t):
        value = msd_from_imresponse(lambda w: 1 / w, t, cfg)
        assert value == pytest.approx(inverse_omega_msd(cfg.uv_cutoff, t), rel=1e-8)

    def test_linearity(self, cfg):
        a = msd_from_imresponse(lambda w: 1 / w, 50.0, cfg)
        b = msd_from_imresponse(lambda w: 3.5 / w, 50.0, cfg)
        assert b == pytest.approx(3.5 * a, rel=1e-12)

    def test_quadratic_model_log_growth(self, cfg):
        m = 1.0
        imR = lambda w: 1 / (6 * math.pi * m**2 * w)  # noqa: E731
        d = msd_from_imresponse(imR, 1e3, cfg) - msd_from_imresponse(imR, 1e2, cfg)
        assert d == pytest.approx(math.log(10) / (3 * math.pi**2 * m**2), rel=1e-3)

    @pytest.mark.parametrize("t", [2.0, 10.0, 100.0])
    def test_discrete_log_slope_constant(self, cfg, t):
        f = lambda w: 1 / w  # noqa: E731
        slope = (msd_from_imresponse(f, 2 * t, cfg) - msd_from_imresponse(f, t, cfg)) / math.log(2)
        assert slope == pytest.approx(2 / math.pi, rel=1e-3)

    def test_sampled_response_uses_grid_cutoff(self, cfg):
        w = np.geomspace(1e-6, 10.0, 4000)
        imR = SpectralFunction.sampled(w, 1 / w)
        value = msd_from_imresponse(imR, 5.0, QuadratureConfig(epsrel=1e-6, epsabs=1e-8))
        assert value == pytest.approx(inverse_omega_msd(10.0, 5.0), rel=1e-3)

    def test_time_must_be_positive(self, cfg):
        with pytest.raises(ValueError):
            msd_from_imresponse(lambda w: 1 / w, 0.0, cfg)


class TestRealTime:
    @staticmethod
    def exact(mu, tau, t):
        return mu / math.pi * math.log(t**2 / tau**2 - 1)

    def test_e_fold(self):
        value = msd_realtime_a4(math.pi / 2, 1.0, math.e)
        assert value == pytest.approx(self.exact(math.pi / 2, 1.0, math.e), rel=1e-8)
        assert value == pytest.approx(1.0, rel=0.1)

    def test_zero_mobility(self):
        assert msd_realtime_a4(0.0, 1.0, 10.0) == 0.0

    def test_long_time(self):
        value = msd_realtime_a4(1.0, 1.0, 1e6)
        assert value == pytest.approx(2 / math.pi * 6 * math.log(10), rel=1e-8)

    @pytest.mark.parametrize("t", [3.0, 30.0, 300.0])
    def test_agrees_with_closed_form(self, t):
        assert msd_realtime_a4(0.8, 1.0, t) == pytest.approx(self.exact(0.8, 1.0, t), rel=1e-8)

    def test_invalid_times(self):
        with pytest.raises(ValueError):
            msd_realtime_a4(1.0, 2.0, 1.0)
        with pytest.raises(ValueError):
            a4_integral(lambda s: 1.0, 1.0, lower=0.5, eps=0.6)
