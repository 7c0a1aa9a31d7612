"""Fluctuation-dissipation conversions and mean-square displacement from a response.

Spectral functions are stored on the positive frequency axis and extended to
negative frequencies by their parity tag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._numerics import quad, richardson
from .core import QuadratureConfig

_PARITIES = ("odd", "even", "none")


@dataclass(frozen=True, eq=False)
class SpectralFunction:
    """A function of frequency given in closed form or on a positive grid.

    Exactly one of ``func`` or (``omega``, ``values``) is set. ``func`` is only
    ever called with positive frequencies; the parity tag extends the result
    to ``omega < 0``.
    """

    func: Callable[[np.ndarray], np.ndarray] | None = None
    omega: np.ndarray | None = None
    values: np.ndarray | None = None
    parity: str = "none"
    uv_cutoff: float = math.inf

    def __post_init__(self):
        if self.parity not in _PARITIES:
            raise ValueError(f"parity must be one of {_PARITIES}, got {self.parity!r}")
        if (self.func is None) == (self.omega is None):
            raise ValueError("give either a closed-form func or a sampled grid, not both")
        if self.omega is not None:
            omega = np.asarray(self.omega, dtype=float)
            values = np.asarray(self.values, dtype=float)
            if omega.ndim != 1 or omega.shape != values.shape:
                raise ValueError("grid and values must be 1-d arrays of equal length")
            if omega.size == 0 or omega[0] <= 0 or np.any(np.diff(omega) <= 0):
                raise ValueError("grid frequencies must be positive and strictly increasing")
            if not np.all(np.isfinite(values)):
                raise ValueError("sampled values must be finite")
            object.__setattr__(self, "omega", omega)
            object.__setattr__(self, "values", values)

    @classmethod
    def closed(cls, func, parity="none", uv_cutoff=math.inf) -> "SpectralFunction":
        return cls(func=func, parity=parity, uv_cutoff=uv_cutoff)

    @classmethod
    def sampled(cls, omega, values, parity="none") -> "SpectralFunction":
        omega = np.asarray(omega, dtype=float)
        return cls(omega=omega, values=values, parity=parity, uv_cutoff=float(omega[-1]))

    @property
    def is_sampled(self) -> bool:
        return self.omega is not None

    def _positive(self, w):
        if self.func is not None:
            return np.asarray(self.func(w), dtype=float)
        return np.interp(w, self.omega, self.values)

    def __call__(self, omega):
        w = np.asarray(omega, dtype=float)
        scalar = w.ndim == 0
        w = np.atleast_1d(w)
        if self.parity == "none" and np.any(w < 0):
            raise ValueError("negative frequency requested for a function without parity")
        out = np.asarray(self._positive(np.abs(w)), dtype=float) * np.ones_like(w)
        if self.parity == "odd":
            out = np.sign(w) * out
        return float(out[0]) if scalar else out

    def transform(self, factor: Callable[[np.ndarray], np.ndarray], parity: str) -> "SpectralFunction":
        """Pointwise product with ``factor(omega)`` on the positive axis.

        Sampled functions stay sampled on the same grid so chained transforms
        compose exactly.
        """
        if self.is_sampled:
            return SpectralFunction(
                omega=self.omega, values=factor(self.omega) * self.values,
                parity=parity, uv_cutoff=self.uv_cutoff,
            )
        inner = self._positive
        return SpectralFunction(
            func=lambda w: factor(w) * inner(w), parity=parity, uv_cutoff=self.uv_cutoff
        )


def _as_spectral(f) -> SpectralFunction:
    if isinstance(f, SpectralFunction):
        return f
    return SpectralFunction.closed(f)


def _check_temperature(T: float) -> None:
    if not (T >= 0 and math.isfinite(T)):
        raise ValueError(f"temperature must be >= 0, got T={T!r}")


def _thermal_factor(T: float):
    # tanh(omega / 2T); tends to sgn(omega) as T -> 0
    if T == 0:
        return lambda w: np.ones_like(np.asarray(w, dtype=float))

    def factor(w):
        with np.errstate(over="ignore"):
            return np.tanh(np.asarray(w, dtype=float) / (2.0 * T))

    return factor


def imchi_from_cf(cf, T: float) -> SpectralFunction:
    """Dissipative kernel ``Im chi = tanh(omega/2T) C_F`` (``sgn(omega) C_F`` at T=0).

    The result is tagged odd.
    """
    _check_temperature(T)
    return _as_spectral(cf).transform(_thermal_factor(T), "odd")


def cf_from_imchi(imchi, T: float) -> SpectralFunction:
    """Inverse of :func:`imchi_from_cf`; the result is tagged even.

    At ``T > 0`` the division by ``tanh(omega/2T)`` is singular at zero
    frequency. The ``omega -> 0`` limit is taken numerically and a
    ``ValueError`` is raised if it diverges.
    """
    _check_temperature(T)
    imchi = _as_spectral(imchi)
    if T == 0:
        return imchi.transform(_thermal_factor(0.0), "even")
    tanh = _thermal_factor(T)

    def factor(w):
        w = np.asarray(w, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = 1.0 / tanh(w)
        return out

    out = imchi.transform(factor, "even")
    if out.is_sampled:
        if not np.all(np.isfinite(out.values)):
            raise ValueError("C_F is not finite on the grid")
        return out

    inner = out.func

    def func(w):
        w = np.asarray(w, dtype=float)
        with np.errstate(invalid="ignore"):
            vals = np.asarray(inner(w), dtype=float) * np.ones_like(w)
        zero = w == 0
        if np.any(zero):
            vals = np.where(zero, _zero_limit(imchi, T), vals)
        return vals

    return SpectralFunction.closed(func, parity="even", uv_cutoff=imchi.uv_cutoff)


def _zero_limit(imchi: SpectralFunction, T: float) -> float:
    # imchi(h) / tanh(h/2T) at two small h; linear extrapolation to h = 0
    h = 1e-5 * T
    v1 = imchi(h) / math.tanh(h / (2 * T))
    v2 = imchi(h / 10) / math.tanh(h / (20 * T))
    if not (math.isfinite(v1) and math.isfinite(v2)) or abs(v2) > 5 * abs(v1) + 1e-300:
        raise ValueError("C_F diverges as omega -> 0 at finite temperature")
    return v2 + (v2 - v1) / 9.0


def msd_from_imresponse(imR, t: float, cfg: QuadratureConfig | None = None) -> float:
    """Zero-temperature mean-square displacement from the absorptive response.

    Evaluates ``(2/pi) int_0^UV (1 - cos(omega t)) Im R(omega) d omega`` with
    ``UV = cfg.uv_cutoff``. An integrable ``1/omega`` singularity of ``Im R``
    at the origin is allowed. Above a few oscillation periods the cosine
    part is done with a Fourier-weighted rule.
    """
    cfg = cfg or QuadratureConfig()
    if not t > 0:
        raise ValueError(f"time must be positive, got t={t!r}")
    imR = _as_spectral(imR)
    uv = min(cfg.uv_cutoff, imR.uv_cutoff)
    split = min(uv, 20.0 * math.pi / t)

    def low(w):
        return 2.0 * math.sin(0.5 * w * t) ** 2 * imR(w)

    total = quad(low, 0.0, split, cfg, what="low-frequency MSD integral")
    if split < uv:
        # split the smooth part by decades; Im R may vary over many scales
        edges = np.geomspace(split, uv, max(2, int(math.log10(uv / split)) + 2))
        for a, b in zip(edges[:-1], edges[1:]):
            total += quad(imR, a, b, cfg, what="MSD integral")
        total -= quad(imR, split, uv, cfg, what="oscillatory MSD integral", weight="cos", wvar=t)
    return 2.0 / math.pi * total


def a4_integral(response, t: float, *, eps: float | None = None, lower: float = 0.0,
                breakpoints=(), cfg: QuadratureConfig | None = None) -> float:
    """Real-time MSD from a response function R(t') on ``[lower, inf)``.

    Computes ``(1/pi) PV int R(t') [2/t' - 1/(t'+t) - 1/(t'-t)] dt'``. The
    pole at ``t' = t`` is excised symmetrically with half-widths ``eps``,
    ``eps/2``, ``eps/4`` and the results are Richardson-extrapolated to zero.
    """
    cfg = cfg or QuadratureConfig()
    if not t > lower:
        raise ValueError("pole must lie inside the integration range")
    if eps is None:
        eps = 0.05 * min(t - lower, t)
    if not 0 < eps < t - lower:
        raise ValueError("excision half-width must be smaller than t - lower")

    def kernel(s):
        # 2/s - 1/(s+t) - 1/(s-t), combined to avoid cancellation at large s
        return -2.0 * t * t / (s * (s - t) * (s + t))

    def integrand(s):
        return response(s) * kernel(s)

    def excised(e):
        total = 0.0
        for a, b in ((lower, t - e), (t + e, 2 * t + e)):
            inner = [p for p in breakpoints if a < p < b]
            pts = [a, *sorted(inner), b]
            for lo, hi in zip(pts[:-1], pts[1:]):
                total += quad(integrand, lo, hi, cfg, what="real-time MSD integral")
        edges = [2 * t + e, *(t * 10.0**k for k in range(1, 5))]
        for a, b in zip(edges[:-1], edges[1:]):
            total += quad(integrand, a, b, cfg, what="real-time MSD integral")
        total += quad(integrand, edges[-1], math.inf, cfg, what="real-time MSD tail")
        return total

    estimates = [excised(eps / 2**j) for j in range(3)]
    # symmetric excision error is odd in eps
    return richardson(estimates, step=2) / math.pi


def msd_realtime_a4(mu: float, tau: float, t: float, cfg: QuadratureConfig | None = None) -> float:
    """Real-time MSD for a step response ``R(t') = mu`` for ``t' > tau``.

    Grows as ``(2 mu / pi) ln(t / tau)`` for ``t >> tau``.
    """
    if not (t > tau > 0):
        raise ValueError(f"need t > tau > 0, got t={t!r}, tau={tau!r}")
    if mu == 0:
        return 0.0
    return a4_integral(lambda s: mu, t, lower=tau, cfg=cfg)
