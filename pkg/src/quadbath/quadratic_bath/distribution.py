"""Truncated inverse-cube position distribution and its sampler."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..core import DerivedScales

DEFAULT_BLOCK = 1 << 16


@dataclass(frozen=True)
class PositionDistribution:
    """Density ``lam_tilde^2 / |X|^3`` on ``lam_tilde < |X| < vt``, zero elsewhere.

    The density is not renormalized: its total mass is
    ``1 - (lam_tilde / vt)^2``.
    """

    lam_tilde: float
    vt: float

    def __post_init__(self):
        if not (self.lam_tilde > 0 and math.isfinite(self.lam_tilde)):
            raise ValueError(f"lam_tilde must be positive, got {self.lam_tilde!r}")
        if not (self.vt > self.lam_tilde and math.isfinite(self.vt)):
            raise ValueError(f"need vt > lam_tilde, got vt={self.vt!r}, lam_tilde={self.lam_tilde!r}")

    @classmethod
    def at_time(cls, scales: DerivedScales, t: float) -> "PositionDistribution":
        return cls(scales.lam_tilde, scales.v * t)

    @property
    def mass(self) -> float:
        return 1.0 - (self.lam_tilde / self.vt) ** 2

    def pdf(self, x):
        return pdf_eval(self, x)

    def cdf(self, x):
        """CDF of the normalized density (mass rescaled to one)."""
        x = np.asarray(x, dtype=float)
        a = np.clip(np.abs(x), self.lam_tilde, self.vt)
        half = 0.5 * (1.0 - (self.lam_tilde / a) ** 2) / self.mass
        out = 0.5 + np.sign(x) * half
        return float(out) if out.ndim == 0 else out

    def magnitude_ppf(self, u):
        """Inverse CDF of ``|X|`` under the normalized density."""
        u = np.asarray(u, dtype=float)
        return self.lam_tilde / np.sqrt(1.0 - u * self.mass)


def pdf_eval(dist: PositionDistribution, x):
    """Unnormalized density ``lam_tilde^2/|X|^3`` inside the shell, else 0."""
    x = np.asarray(x, dtype=float)
    a = np.abs(x)
    inside = (a > dist.lam_tilde) & (a < dist.vt)
    with np.errstate(divide="ignore"):
        out = np.where(inside, dist.lam_tilde**2 / a**3, 0.0)
    return float(out) if out.ndim == 0 else out


def _sample_block(dist: PositionDistribution, seed: int, block: int, size: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    u = rng.random(size)
    sign = np.where(rng.random(size) < 0.5, -1.0, 1.0)
    return sign * dist.magnitude_ppf(u)


def pdf_sample(dist: PositionDistribution, count: int, seed: int, *, block_size: int = DEFAULT_BLOCK,
               workers: int = 1) -> np.ndarray:
    """Inverse-transform samples of the normalized density with random sign.

    Draws are made in fixed-size blocks, each with its own random substream
    keyed by ``(seed, block index)``, so the output does not depend on
    ``workers``.
    """
    if count <= 0:
        raise ValueError(f"count must be positive, got {count!r}")
    nblocks = -(-count // block_size)
    sizes = [min(block_size, count - b * block_size) for b in range(nblocks)]
    if workers > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _sample_block(dist, seed, b, sizes[b]), range(nblocks)))
    else:
        parts = [_sample_block(dist, seed, b, sizes[b]) for b in range(nblocks)]
    return np.concatenate(parts)


def pdf_moment(n: int, dist: PositionDistribution) -> float:
    """Analytic moment ``int X^n P(X) dX`` of the unnormalized density.

    ``n = 0`` gives the total mass, odd ``n`` give exactly 0.
    """
    if int(n) != n or n < 0:
        raise ValueError(f"order must be a non-negative integer, got {n!r}")
    n = int(n)
    lt, vt = dist.lam_tilde, dist.vt
    if n % 2:
        return 0.0
    if n == 0:
        return dist.mass
    if n == 2:
        return 2.0 * lt**2 * math.log(vt / lt)
    return 2.0 * lt**2 * (vt ** (n - 2) - lt ** (n - 2)) / (n - 2)
