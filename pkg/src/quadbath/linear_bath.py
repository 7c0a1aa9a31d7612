"""Linearly coupled baths: charge-like (case A) and density-like (case B) couplings.

Both are Gaussian, so only second-order statistics are provided here.
Power laws carry unit prefactors; the coupling ``g`` sets the overall scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import QuadratureConfig
from .fdt import SpectralFunction, msd_from_imresponse

_EXPONENT = {"A": 1, "B": 3}


@dataclass(frozen=True)
class LinearCase:
    """Coupling ``L ~ Phi`` (``tag="A"``) or ``L ~ d_x Phi`` (``tag="B"``)."""

    tag: str
    g: float = 1.0

    def __post_init__(self):
        if self.tag not in _EXPONENT:
            raise ValueError(f"tag must be 'A' or 'B', got {self.tag!r}")
        if not (self.g > 0 and math.isfinite(self.g)):
            raise ValueError(f"coupling must be positive, got g={self.g!r}")

    @property
    def exponent(self) -> int:
        return _EXPONENT[self.tag]


def force_psd_linear(case: LinearCase, omega):
    """Force power spectrum ``g^2 omega`` (A) or ``g^2 omega^3`` (B), for ``omega > 0``."""
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise ValueError("force PSD is defined for positive frequencies")
    out = case.g**2 * w**case.exponent
    return float(out) if out.ndim == 0 else out


def imchi_linear(case: LinearCase, omega):
    """Odd dissipative kernel: ``sgn(omega) * force_psd_linear(|omega|)``."""
    w = np.asarray(omega, dtype=float)
    # odd powers are already odd, so sgn(w)|w|^p == w^p
    out = case.g**2 * w**case.exponent
    return float(out) if out.ndim == 0 else out


def imresponse_linear(case: LinearCase, m: float) -> SpectralFunction:
    """Absorptive response ``Im chi / ((m w^2)^2 + (Im chi)^2)``.

    The reactive part of chi is taken as already absorbed into ``m``.
    """
    if not m > 0:
        raise ValueError(f"mass must be positive, got m={m!r}")

    def imR(w):
        w = np.asarray(w, dtype=float)
        x = case.g**2 * w ** (case.exponent - 1)  # Im chi / w
        return x / (w * ((m * w) ** 2 + x * x))

    return SpectralFunction.closed(imR, parity="odd")


def msd_linear(case: LinearCase, m: float, t: float, cfg: QuadratureConfig | None = None):
    """Mean-square displacement at time ``t`` and its logarithmic growth rate.

    Returns ``(msd, slope)`` where ``slope`` is the least-squares coefficient
    of ``ln t`` fitted to the MSD at ``t``, ``sqrt(10) t`` and ``10 t``.
    """
    cfg = cfg or QuadratureConfig()
    if not t * m >= 10:
        raise ValueError(f"need t >> 1/m (t*m >= 10), got t*m={t * m:g}")
    imR = imresponse_linear(case, m)
    times = t * np.array([1.0, math.sqrt(10.0), 10.0])
    msd = np.array([msd_from_imresponse(imR, s, cfg) for s in times])
    slope = np.polyfit(np.log(times), msd, 1)[0]
    return float(msd[0]), float(slope)


def log_slope(imR, t1: float, t2: float, cfg: QuadratureConfig | None = None) -> float:
    """Secant slope ``[MSD(t2) - MSD(t1)] / ln(t2/t1)``."""
    d = msd_from_imresponse(imR, t2, cfg) - msd_from_imresponse(imR, t1, cfg)
    return d / math.log(t2 / t1)
