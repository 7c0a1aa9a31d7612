from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from quadbath.quadratic_bath import (
    chain_line_counts,
    diagram_kernel_bruteforce,
    diagram_kernel_closed,
    force_psd_quadratic,
    imchi_quadratic,
    imresponse_quadratic,
)


def test_imchi_values():
    assert imchi_quadratic(1.0) == pytest.approx(1 / (6 * math.pi))
    assert imchi_quadratic(1.0) == pytest.approx(0.053052, abs=1e-6)
    assert imchi_quadratic(-1.0) == pytest.approx(-1 / (6 * math.pi))
    assert imchi_quadratic(2.0) == pytest.approx(0.42441, abs=1e-5)


def test_force_psd_values():
    assert force_psd_quadratic(1.0) == pytest.approx(1 / (6 * math.pi))
    assert force_psd_quadratic(3.0) == pytest.approx(27 / (6 * math.pi))
    with pytest.raises(ValueError):
        force_psd_quadratic(-1.0)


def test_force_psd_from_loop_integral():
    # two photons sharing the energy w: 2 int_0^w dk/2pi k (w - k)
    w = 1.7
    loop, _ = integrate.quad(lambda k: k * (w - k), 0, w, epsabs=1e-14, epsrel=1e-13)
    assert 2 * loop / (2 * math.pi) == pytest.approx(force_psd_quadratic(w), rel=1e-10)


def test_fdt_closure():
    w = np.concatenate([-np.geomspace(1e-3, 1e3, 50), np.geomspace(1e-3, 1e3, 50)])
    np.testing.assert_allclose(imchi_quadratic(w), np.sign(w) * force_psd_quadratic(np.abs(w)), rtol=1e-15)


def test_response_form():
    assert imresponse_quadratic(2.0)(0.5) == pytest.approx(1 / (6 * math.pi * 4 * 0.5))
    assert imresponse_quadratic(1.0)(-0.5) == pytest.approx(-imresponse_quadratic(1.0)(0.5))
    with pytest.raises(ValueError):
        imresponse_quadratic(0.0)


@pytest.mark.parametrize("n,w,expected", [(4, 2.0, 32 / (12 * math.pi)), (2, 1.0, 1 / (12 * math.pi)),
                                          (6, 1.0, 1 / (12 * math.pi))])
def test_closed_values(n, w, expected):
    assert diagram_kernel_closed(n, w) == pytest.approx(expected, rel=1e-15)


def test_closed_n4_value():
    assert diagram_kernel_closed(4, 2.0) == pytest.approx(0.84883, abs=1e-5)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
@pytest.mark.parametrize("w", [0.5, 1.0, 2.0])
def test_bruteforce_matches_closed(cfg, n, w):
    assert diagram_kernel_bruteforce(n, w, cfg) == pytest.approx(diagram_kernel_closed(n, w), rel=1e-8)


def test_n2_is_half_force_psd(cfg):
    w = 0.8
    assert diagram_kernel_bruteforce(2, w, cfg) == pytest.approx(force_psd_quadratic(w) / 2, rel=1e-10)


def test_line_counts():
    counts = chain_line_counts(4)
    assert counts.shape == (4, 2)
    assert np.all(counts.sum(axis=1) == 4)
    assert sorted(map(tuple, counts)) == [(1, 3), (2, 2), (2, 2), (3, 1)]
    assert chain_line_counts(2).tolist() == [[1, 1]]


@pytest.mark.parametrize("n", [3, 5, 0, -2, 2.5])
def test_invalid_orders(n):
    with pytest.raises(ValueError):
        diagram_kernel_closed(n, 1.0)


def test_enumeration_cap(cfg):
    with pytest.raises(ValueError, match="capped"):
        diagram_kernel_bruteforce(14, 1.0, cfg)


def test_nonpositive_frequency(cfg):
    with pytest.raises(ValueError):
        diagram_kernel_bruteforce(4, 0.0, cfg)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 4, 6, 8]), st.floats(0.1, 3.0), st.floats(0.2, 5.0))
def test_homogeneity(n, w, s):
    base = diagram_kernel_bruteforce(n, w)
    assert diagram_kernel_bruteforce(n, s * w) == pytest.approx(s ** (n + 1) * base, rel=1e-9)
