"""Displacement cumulants of the quadratically coupled particle.

Two routes are provided. :func:`cumulant_closed` is the leading long-time
power law. :func:`cumulant_seminumeric` rebuilds the same number from its
ingredients: the diagram kernel integrated over the fast frequency, the
slow-frequency integral with the causal ``i eps`` prescription, and the
combinatorial prefactor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .._numerics import panel_gauss, quad, richardson
from ..core import DerivedScales, ModelParams, QuadratureConfig
from .kernel import _check_order, diagram_kernel_bruteforce

PROVENANCES = ("closed", "numeric", "empirical")

# minimum t * gamma for the fast/slow frequency split
MIN_SEPARATION = 10.0


@dataclass
class CumulantSeries:
    """Connected cumulants keyed by ``(order, time)`` with a provenance tag each."""

    entries: dict = field(default_factory=dict)

    def add(self, n: int, t: float, value: float, provenance: str = "closed") -> None:
        if provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}")
        if n % 2:
            raise ValueError("only even orders are stored")
        if not t > 0:
            raise ValueError("time must be positive")
        self.entries[(int(n), float(t))] = (float(value), provenance)

    def value(self, n: int, t: float) -> float:
        return self.entries[(int(n), float(t))][0]

    def provenance(self, n: int, t: float) -> str:
        return self.entries[(int(n), float(t))][1]

    def orders(self, t: float) -> list[int]:
        return sorted(n for (n, s) in self.entries if s == float(t))

    def times(self) -> list[float]:
        return sorted({s for (_, s) in self.entries})

    def cumulants(self, t: float) -> dict[int, float]:
        return {n: self.value(n, t) for n in self.orders(t)}

    @classmethod
    def closed(cls, orders, times, scales: DerivedScales) -> "CumulantSeries":
        series = cls()
        for n in orders:
            for t in times:
                series.add(n, t, cumulant_closed(n, t, scales), "closed")
        return series


def cumulant_closed(n: int, t: float, scales: DerivedScales) -> float:
    """Leading long-time connected cumulant of order ``n``.

    ``n = 2``: ``(lam^2 / 3 pi^2) ln(t / tau)``.
    ``n >= 4``: ``2 lam_tilde^2 (v t)^(n-2) / (n - 2)``.
    """
    n = _check_order(n)
    if not t > 0:
        raise ValueError(f"time must be positive, got t={t!r}")
    if n == 2:
        if not t > scales.tau:
            raise ValueError(f"the logarithmic variance needs t > tau={scales.tau:g}")
        return scales.lam**2 / (3.0 * math.pi**2) * math.log(t / scales.tau)
    return 2.0 * scales.lam_tilde**2 * (scales.v * t) ** (n - 2) / (n - 2)


def omega1_integral(n: int, gamma: float, cfg: QuadratureConfig | None = None) -> float:
    """``int_0^gamma d w / 2 pi  F_n(w) / w^4`` with the brute-force kernel ``F_n``."""
    cfg = cfg or QuadratureConfig()
    n = _check_order(n, minimum=4)

    def integrand(w):
        return diagram_kernel_bruteforce(n, w, cfg) / w**4

    return quad(integrand, 0.0, gamma, cfg, what=f"order-{n} fast-frequency integral") / (2 * math.pi)


def omega1_integral_closed(n: int, gamma: float) -> float:
    n = _check_order(n, minimum=4)
    return gamma ** (n - 2) / (24.0 * math.pi**2 * (n - 2))


# --- slow frequencies -------------------------------------------------------
#
# In u = w t / 2 one slow variable carries the measure
#     dw / 2pi * sin(w t / 2) / (w^2 + i eps sgn w) = (t / 4 pi) sin(u) / u^2 du
# and 1/(w + i eps) = P(1/w) - i pi delta(w). A delta factor contributes
# -i t / 4 and pins its u to zero inside the cosine; the principal-value
# factors are integrated numerically.

_U_CUTOFFS = (200 * math.pi, 400 * math.pi)


@lru_cache(maxsize=32)
def _pv_slow_integral(dim: int, u_eps: float, u_max: float) -> float:
    """Folded principal-value integral on ``[u_eps, u_max]^dim``.

    Integrand ``prod sin(u_i)/u_i^2 * cos(sum u_i)``, summed over sign flips
    of every variable so the odd ``1/u`` singularities cancel pointwise.
    """
    if dim == 0:
        return 1.0
    u, w = panel_gauss(u_eps, u_max, width=math.pi, nodes=10)
    signs = (1.0, -1.0)
    total = 0.0
    if dim == 1:
        for s in signs:
            a = s * u
            total += np.dot(w, np.sin(a) / a**2 * np.cos(a))
        return float(total)
    if dim == 2:
        for s2, s3 in itertools.product(signs, signs):
            a, b = s2 * u, s3 * u
            fa, fb = w * np.sin(a) / a**2, w * np.sin(b) / b**2
            total += fa @ (np.cos(a[:, None] + b[None, :]) @ fb)
        return float(total)
    raise NotImplementedError("numeric slow integrals are limited to two principal-value variables")


def pv_slow_integral(dim: int, u_eps: float) -> float:
    """Principal-value slow integral extrapolated to zero excision and infinite range."""
    if dim == 0:
        return 1.0
    by_cutoff = []
    for u_max in _U_CUTOFFS:
        vals = [_pv_slow_integral(dim, u_eps / 2**j, u_max) for j in range(3)]
        by_cutoff.append(richardson(vals))
    # truncation error ~ 1/u_max; the cutoffs differ by a factor 2
    return richardson(by_cutoff)


def slow_integral_1d(kind: str, t: float, eps: float | None = None) -> complex:
    """One slow variable against ``cos(w t/2)`` (``"sin_cos"``) or ``sin(w t/2)`` (``"sin_sin"``).

    With the causal prescription these equal ``-i t/4`` and ``t/4``.
    """
    if not t > 0:
        raise ValueError("time must be positive")
    eps = 1e-3 / t if eps is None else eps
    u_eps = eps * t / 2
    pre = t / (4 * math.pi)
    if kind == "sin_cos":
        g, delta_weight = np.cos, 1.0
    elif kind == "sin_sin":
        g, delta_weight = np.sin, 0.0  # sin vanishes where the delta pins u
    else:
        raise ValueError(f"unknown kind {kind!r}")

    def folded(u_lo, u_max):
        u, w = panel_gauss(u_lo, u_max, width=math.pi, nodes=10)
        return sum(np.dot(w, np.sin(s * u) / u**2 * g(s * u)) for s in (1.0, -1.0))

    by_cutoff = [richardson([folded(u_eps / 2**j, um) for j in range(3)]) for um in _U_CUTOFFS]
    pv = pre * richardson(by_cutoff)
    return complex(pv - 1j * t / 4 * delta_weight)


def slow_factor_closed(n: int, t: float) -> complex:
    """``-i^n t^(n-2) / 2^(n-1)``."""
    n = _check_order(n, minimum=4)
    return -(1j**n) * t ** (n - 2) / 2 ** (n - 1)


def slow_factor(n: int, t: float, eps: float | None = None, numeric: bool | None = None) -> complex:
    """Integral over the ``n - 2`` slow frequencies.

    With ``numeric`` (default for ``n == 4``) every slow variable is split
    into its delta-function and principal-value parts; delta parts are
    exact and principal-value parts are integrated numerically. Otherwise
    the closed form is returned.
    """
    n = _check_order(n, minimum=4)
    if not t > 0:
        raise ValueError("time must be positive")
    if numeric is None:
        numeric = n == 4
    if not numeric:
        return slow_factor_closed(n, t)
    k = n - 2
    eps = 1e-3 / t if eps is None else eps
    u_eps = eps * t / 2
    delta = -1j * t / 4
    pv = t / (4 * math.pi)
    total = 0j
    for d in range(k + 1):
        total += math.comb(k, d) * delta ** (k - d) * pv**d * pv_slow_integral(d, u_eps)
    return total


def cumulant_seminumeric(n: int, t: float, params: ModelParams, cfg: QuadratureConfig | None = None,
                         numeric_slow: bool | None = None) -> float:
    """Connected cumulant rebuilt from the diagram kernel and frequency integrals.

    The fast frequency ``w1`` runs over ``(0, gamma)``; the leading factor 2
    counts both half-spaces. The first and last sine factors average to
    ``-1/2 cos(w_bar t / 2)`` over the fast oscillation, leaving the slow
    integral of :func:`slow_factor`. Raises ``ValueError`` when ``t * gamma``
    is too small to separate fast and slow frequencies.
    """
    cfg = cfg or QuadratureConfig()
    n = _check_order(n, minimum=4)
    if t * params.gamma < MIN_SEPARATION:
        raise ValueError(
            f"fast/slow separation needs t*gamma >= {MIN_SEPARATION:g}, got {t * params.gamma:g}"
        )
    fast = omega1_integral(n, params.gamma, cfg)
    eps = min(1.0 / t, params.gamma) * 1e-3
    slow = slow_factor(n, t, eps=eps, numeric=numeric_slow)
    prefactor = 2.0 * 2**n * (2j) ** n / params.m**n
    value = prefactor * -0.5 * fast * slow
    if abs(value.imag) > 1e-6 * abs(value):
        raise ArithmeticError(f"cumulant has an imaginary part: {value!r}")
    return float(value.real)


def seminumeric_series(orders, times, params: ModelParams, cfg: QuadratureConfig | None = None,
                       series: CumulantSeries | None = None) -> CumulantSeries:
    series = series if series is not None else CumulantSeries()
    for n in orders:
        for t in times:
            series.add(n, t, cumulant_seminumeric(n, t, params, cfg), "numeric")
    return series


def loglog_slope(times, values) -> float:
    """Least-squares slope of ``ln values`` against ``ln times``."""
    return float(np.polyfit(np.log(times), np.log(values), 1)[0])
