"""Model parameters, derived length/time scales and quadrature settings.

Everything is in natural units (hbar = c = k_B = 1): masses, frequencies and
temperatures are energies; lengths and times are inverse energies.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass


class QuadratureError(RuntimeError):
    """Raised when an integral does not converge to the requested tolerance."""

    def __init__(self, message: str, value: float = math.nan, abserr: float = math.nan):
        super().__init__(f"{message} (value={value!r}, error estimate={abserr!r})")
        self.value = value
        self.abserr = abserr


class RegimeWarning(UserWarning):
    """Inputs lie outside the regime where the leading-order closed forms hold."""


# Gamma/m above this triggers a RegimeWarning; Gamma/m >= 1 is an error.
WEAK_CUTOFF_WARN = 0.1


@dataclass(frozen=True)
class ModelParams:
    """Particle mass ``m``, transparency cutoff ``gamma`` and temperature ``T``."""

    m: float
    gamma: float
    T: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m > 0):
            raise ValueError(f"mass must be positive, got m={self.m!r}")
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"cutoff must be positive, got gamma={self.gamma!r}")
        if self.gamma >= self.m:
            raise ValueError(
                f"cutoff must satisfy gamma < m (weak-cutoff regime), got gamma/m={self.gamma / self.m:g}"
            )
        if not (math.isfinite(self.T) and self.T >= 0):
            raise ValueError(f"temperature must be >= 0, got T={self.T!r}")
        if self.gamma / self.m > WEAK_CUTOFF_WARN:
            warnings.warn(
                f"gamma/m = {self.gamma / self.m:g} > {WEAK_CUTOFF_WARN}; "
                "leading-order results in gamma/m may be inaccurate",
                RegimeWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class DerivedScales:
    """Length and time scales of the quadratically coupled particle.

    Attributes
    ----------
    lam : float
        Compton/de Broglie length ``1/m``.
    lam_tilde : float
        Inner cutoff of the position distribution, ``lam / (sqrt(6) pi)``.
    tau : float
        Short-time reference scale ``1/m`` (argument of the logarithms).
    v : float
        Wavefront speed ``2 gamma / m`` as a fraction of the light speed.
    """

    lam: float
    lam_tilde: float
    tau: float
    v: float

    def __post_init__(self):
        for name in ("lam", "lam_tilde", "tau", "v"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.v >= 1:
            raise ValueError(f"wavefront speed must be below 1, got v={self.v!r}")
        if self.lam_tilde >= self.lam:
            raise ValueError("lam_tilde must be smaller than lam")

    @property
    def m(self) -> float:
        return 1.0 / self.lam

    @property
    def gamma(self) -> float:
        return 0.5 * self.v * self.m

    @classmethod
    def from_cutoffs(cls, lam_tilde: float, v: float) -> "DerivedScales":
        """Scales for a given inner cutoff ``lam_tilde`` and speed ``v``."""
        lam = math.sqrt(6.0) * math.pi * lam_tilde
        return cls(lam=lam, lam_tilde=lam_tilde, tau=lam, v=v)


def derive_scales(params: ModelParams) -> DerivedScales:
    """Derived scales ``lam = tau = 1/m``, ``lam_tilde = lam/(sqrt(6) pi)``, ``v = 2 gamma/m``."""
    lam = 1.0 / params.m
    return DerivedScales(
        lam=lam,
        lam_tilde=lam / (math.sqrt(6.0) * math.pi),
        tau=1.0 / params.m,
        v=2.0 * params.gamma / params.m,
    )


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and cutoffs shared by the numerical integrals.

    ``eps`` is the half-width of the excised neighbourhood around a pole
    (it is extrapolated to zero where used); ``uv_cutoff`` is the upper
    frequency limit of spectral integrals.
    """

    epsabs: float = 1e-12
    epsrel: float = 1e-10
    limit: int = 500
    eps: float = 1e-6
    uv_cutoff: float = 1e3

    def __post_init__(self):
        if not (self.epsabs > 0 and self.epsrel > 0):
            raise ValueError("tolerances must be positive")
        if self.limit < 1:
            raise ValueError("limit must be at least 1")
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if not self.uv_cutoff > 0:
            raise ValueError("uv_cutoff must be positive")
