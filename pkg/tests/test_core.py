from __future__ import annotations

import math
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from quadbath.core import (
    DerivedScales,
    ModelParams,
    QuadratureConfig,
    QuadratureError,
    RegimeWarning,
    derive_scales,
)


def test_unit_mass_scales():
    s = derive_scales(ModelParams(1.0, 0.1))
    assert s.lam == 1.0
    assert s.tau == 1.0
    assert s.lam_tilde == pytest.approx(1 / (math.sqrt(6) * math.pi))
    assert s.lam_tilde == pytest.approx(0.12995, abs=1e-5)
    assert s.v == pytest.approx(0.2)


def test_heavier_particle():
    s = derive_scales(ModelParams(2.0, 0.1))
    assert s.lam == 0.5
    assert s.v == pytest.approx(0.1)


@pytest.mark.parametrize("gamma", [1.0, 1.5])
def test_cutoff_above_mass_rejected(gamma):
    with pytest.raises(ValueError, match="gamma < m"):
        ModelParams(1.0, gamma)


@pytest.mark.parametrize("kwargs", [dict(m=0, gamma=0.1), dict(m=-1, gamma=0.1),
                                    dict(m=1, gamma=0), dict(m=1, gamma=0.1, T=-1),
                                    dict(m=math.inf, gamma=0.1)])
def test_invalid_params(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)


def test_regime_warning():
    with pytest.warns(RegimeWarning):
        ModelParams(1.0, 0.5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ModelParams(1.0, 0.1)


def test_derived_scales_validation():
    with pytest.raises(ValueError):
        DerivedScales(lam=1, lam_tilde=0.1, tau=1, v=1.0)
    with pytest.raises(ValueError):
        DerivedScales(lam=1, lam_tilde=2, tau=1, v=0.1)


def test_from_cutoffs_round_trip():
    s = derive_scales(ModelParams(1.0, 0.1))
    r = DerivedScales.from_cutoffs(s.lam_tilde, s.v)
    assert r.lam == pytest.approx(s.lam)
    assert r.m == pytest.approx(1.0)
    assert r.gamma == pytest.approx(0.1)


def test_frozen():
    s = derive_scales(ModelParams(1.0, 0.1))
    with pytest.raises(AttributeError):
        s.lam = 2.0


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(epsabs=0)
    with pytest.raises(ValueError):
        QuadratureConfig(uv_cutoff=-1)


def test_quadrature_error_carries_estimate():
    err = QuadratureError("bad", value=1.0, abserr=0.5)
    assert err.value == 1.0 and err.abserr == 0.5
    assert "bad" in str(err)


masses = st.floats(0.01, 100.0)
ratios = st.floats(1e-4, 0.099)


@settings(max_examples=60, deadline=None)
@given(masses, ratios, st.floats(0.1, 10.0))
def test_dimensional_scaling(m, ratio, s):
    base = derive_scales(ModelParams(m, ratio * m))
    scaled = derive_scales(ModelParams(s * m, s * ratio * m))
    assert scaled.lam == pytest.approx(base.lam / s, rel=1e-12)
    assert scaled.lam_tilde == pytest.approx(base.lam_tilde / s, rel=1e-12)
    assert scaled.tau == pytest.approx(base.tau / s, rel=1e-12)
    assert scaled.v == pytest.approx(base.v, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(masses, ratios)
def test_derive_scales_is_pure(m, ratio):
    p = ModelParams(m, ratio * m)
    assert derive_scales(p) == derive_scales(p)
