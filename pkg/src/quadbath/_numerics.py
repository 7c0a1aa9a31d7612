"""Shared quadrature helpers: checked adaptive quad, Richardson tables, panel rules."""

from __future__ import annotations

import warnings

import numpy as np
from scipy import integrate

from .core import QuadratureConfig, QuadratureError


def quad(func, a, b, cfg: QuadratureConfig, *, what: str = "integral", **kwargs) -> float:
    """``scipy.integrate.quad`` that raises :class:`QuadratureError` instead of warning."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, abserr = integrate.quad(
                func, a, b, epsabs=cfg.epsabs, epsrel=cfg.epsrel, limit=cfg.limit, **kwargs
            )
        except integrate.IntegrationWarning as exc:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                value, abserr = integrate.quad(
                    func, a, b, epsabs=cfg.epsabs, epsrel=cfg.epsrel, limit=cfg.limit, **kwargs
                )
            # scipy is conservative; accept when the achieved error is still tiny.
            if abserr > max(100 * cfg.epsabs, 100 * cfg.epsrel * abs(value)):
                raise QuadratureError(f"{what} did not converge: {exc}", value, abserr) from None
    if not np.isfinite(value):
        raise QuadratureError(f"{what} is not finite", value, abserr)
    return value


def richardson(values, ratio: float = 2.0, order: int = 1, step: int = 1) -> float:
    """Extrapolate ``values[j] = I(h / ratio**j)`` to ``h -> 0``.

    Assumes an error expansion in powers ``h**order, h**(order+step), ...``.
    """
    table = [np.asarray(v, dtype=complex) for v in values]
    p = order
    while len(table) > 1:
        f = ratio**p
        table = [(f * table[j + 1] - table[j]) / (f - 1) for j in range(len(table) - 1)]
        p += step
    out = table[0]
    return complex(out) if np.iscomplexobj(out) and out.imag != 0 else float(out.real)


def panel_gauss(a: float, b: float, width: float, nodes: int = 10):
    """Composite Gauss-Legendre rule on ``[a, b]`` with panels of about ``width``."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    npanel = max(1, int(np.ceil((b - a) / width)))
    edges = np.linspace(a, b, npanel + 1)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    return (half * x + 0.5 * (hi + lo)).ravel(), (half * w).ravel()
