"""Consistency diagnostics: moment positivity and the Chapman-Kolmogorov test."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .._numerics import quad
from ..core import DerivedScales, QuadratureConfig
from .cumulants import CumulantSeries
from .distribution import PositionDistribution, pdf_eval


def cumulants_to_moments(cumulants: dict[int, float], max_order: int) -> dict[int, float]:
    """Raw moments from cumulants; orders absent from ``cumulants`` count as zero."""
    moments = {0: 1.0}
    for n in range(1, max_order + 1):
        moments[n] = sum(
            math.comb(n - 1, k - 1) * cumulants.get(k, 0.0) * moments[n - k] for k in range(1, n + 1)
        )
    return moments


def moments_to_cumulants(moments: dict[int, float], max_order: int) -> dict[int, float]:
    """Inverse of :func:`cumulants_to_moments` (requires ``moments[0] == 1``)."""
    cumulants: dict[int, float] = {}
    for n in range(1, max_order + 1):
        cumulants[n] = moments.get(n, 0.0) - sum(
            math.comb(n - 1, k - 1) * cumulants[k] * moments.get(n - k, 0.0) for k in range(1, n)
        )
    return cumulants


@dataclass
class PawulaReport:
    ok: bool
    checked: int
    tightest_ratio: float
    tightest_pair: tuple[int, int] | None
    violations: list[tuple[int, int, float]] = field(default_factory=list)


def pawula_check_moments(moments: dict[int, float]) -> PawulaReport:
    """Check ``M_{n+m}^2 <= M_n M_{n+2m}`` for even ``n >= 0`` and ``m >= 1``.

    ``moments`` maps order to moment and must hold every order up to its
    maximum, starting at 0. The ratio ``M_{n+m}^2 / (M_n M_{n+2m})`` is
    reported for the tightest pair; a non-positive denominator is a violation.
    """
    top = max(moments)
    missing = [k for k in range(top + 1) if k not in moments]
    if missing:
        raise ValueError(f"missing moment orders: {missing}")
    worst, worst_pair, checked = -math.inf, None, 0
    violations = []
    for n in range(0, top + 1, 2):
        for m in range(1, (top - n) // 2 + 1):
            lhs = moments[n + m] ** 2
            rhs = moments[n] * moments[n + 2 * m]
            ratio = lhs / rhs if rhs > 0 else math.inf
            checked += 1
            if ratio > 1.0 or rhs <= 0:
                violations.append((n, m, ratio))
            if ratio > worst:
                worst, worst_pair = ratio, (n, m)
    return PawulaReport(not violations, checked, worst, worst_pair, violations)


def pawula_check(series: CumulantSeries, t: float) -> PawulaReport:
    """Pawula inequalities for the moments implied by the cumulants at time ``t``.

    Odd cumulants are zero by symmetry; every even order up to the largest
    stored one must be present.
    """
    orders = series.orders(t)
    if not orders:
        raise ValueError(f"no cumulants stored at t={t!r}")
    top = max(orders)
    missing = [k for k in range(2, top + 1, 2) if k not in orders]
    if missing:
        raise ValueError(f"missing cumulant orders at t={t!r}: {missing}")
    return pawula_check_moments(cumulants_to_moments(series.cumulants(t), top))


def _convolution(x: float, d1: PositionDistribution, d2: PositionDistribution, cfg) -> float:
    """``int P1(x - y) P2(y) dy`` split over the pieces where both factors are smooth."""
    total = 0.0
    for s2 in (1.0, -1.0):
        # y in s2*(lt2, vt2)
        y_lo, y_hi = sorted((s2 * d2.lam_tilde, s2 * d2.vt))
        for s1 in (1.0, -1.0):
            # x - y in s1*(lt1, vt1)  ->  y in x - s1*(lt1, vt1)
            z_lo, z_hi = sorted((x - s1 * d1.lam_tilde, x - s1 * d1.vt))
            lo, hi = max(y_lo, z_lo), min(y_hi, z_hi)
            if hi <= lo:
                continue
            total += quad(
                lambda y: d1.lam_tilde**2 / abs(x - y) ** 3 * d2.lam_tilde**2 / abs(y) ** 3,
                lo, hi, cfg, what="Chapman-Kolmogorov convolution",
            )
    return total


def ck_grid(d1: PositionDistribution, d2: PositionDistribution, d12: PositionDistribution,
            points: int = 200) -> np.ndarray:
    """Non-negative positions covering every kink of the three densities."""
    lt = d12.lam_tilde
    edges = {lt, d12.vt, d1.vt, d2.vt, d1.lam_tilde + d2.lam_tilde,
             d1.vt + d2.lam_tilde, d2.vt + d1.lam_tilde, abs(d1.vt - d2.lam_tilde),
             abs(d2.vt - d1.lam_tilde), d1.vt + d2.vt}
    just_inside = [np.nextafter(e, np.inf) for e in edges] + [np.nextafter(e, -np.inf) for e in edges]
    body = np.geomspace(lt * 1e-3, 1.05 * (d1.vt + d2.vt), points)
    grid = np.concatenate([[0.0], body, list(edges), just_inside])
    return np.unique(grid[grid >= 0])


def ck_residual(t1: float, t2: float, scales: DerivedScales, cfg: QuadratureConfig | None = None,
                points: int = 200) -> float:
    """Sup-norm violation of the Chapman-Kolmogorov equation by the power-law density.

    Returns ``max_X |int P(t1, X-Y) P(t2, Y) dY - P(t1+t2, X)|`` over a grid
    of positions. A Markov process would give zero.
    """
    cfg = cfg or QuadratureConfig()
    floor = scales.lam_tilde / scales.v
    if not (t1 > floor and t2 > floor):
        raise ValueError(f"times must exceed lam_tilde/v = {floor:g}")
    d1 = PositionDistribution.at_time(scales, t1)
    d2 = PositionDistribution.at_time(scales, t2)
    d12 = PositionDistribution.at_time(scales, t1 + t2)
    xs = ck_grid(d1, d2, d12, points)
    conv = np.array([_convolution(x, d1, d2, cfg) for x in xs])
    return float(np.max(np.abs(conv - pdf_eval(d12, xs))))
