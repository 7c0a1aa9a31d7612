"""Dissipation, force noise and the chain-diagram kernel of the Dirichlet particle."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .._numerics import quad
from ..core import QuadratureConfig
from ..fdt import SpectralFunction

MAX_BRUTEFORCE_ORDER = 12


def _check_order(n: int, *, minimum: int = 2) -> int:
    if int(n) != n:
        raise ValueError(f"order must be an integer, got {n!r}")
    n = int(n)
    if n % 2:
        raise ValueError(f"odd orders vanish identically (left/right cancellation), got n={n}")
    if n < minimum:
        raise ValueError(f"order must be >= {minimum}, got n={n}")
    return n


def imchi_quadratic(omega):
    """Vacuum friction kernel ``omega^3 / (6 pi)`` (odd in omega)."""
    w = np.asarray(omega, dtype=float)
    out = w**3 / (6.0 * math.pi)
    return float(out) if out.ndim == 0 else out


def force_psd_quadratic(omega):
    """Force noise spectrum ``omega^3 / (6 pi)`` for ``omega > 0``."""
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise ValueError("force PSD is defined for positive frequencies")
    out = w**3 / (6.0 * math.pi)
    return float(out) if out.ndim == 0 else out


def imresponse_quadratic(m: float) -> SpectralFunction:
    """Long-time absorptive response ``1 / (6 pi m^2 omega)``.

    The friction ``omega^3/(6 pi)`` is negligible against the inertial
    ``m omega^2`` at small frequency, so ``Im R ~ Im chi / (m omega^2)^2``.
    """
    if not m > 0:
        raise ValueError(f"mass must be positive, got m={m!r}")
    return SpectralFunction.closed(lambda w: 1.0 / (6.0 * math.pi * m**2 * w), parity="odd")


def diagram_kernel_closed(n: int, omega1: float) -> float:
    """Summed chain diagrams ``omega1^(n+1) / (12 pi)``."""
    n = _check_order(n)
    if not omega1 > 0:
        raise ValueError(f"omega1 must be positive, got {omega1!r}")
    return omega1 ** (n + 1) / (12.0 * math.pi)


@lru_cache(maxsize=None)
def chain_line_counts(n: int) -> np.ndarray:
    """Line multiplicities of every n-vertex chain diagram.

    The outer vertices create (annihilate) two photons with momenta ``k`` and
    ``omega1 - k``. Each of the ``n - 2`` inner vertices absorbs and re-emits
    one of them, splitting that line in two. Returns an array of shape
    ``(2**(n-2), 2)`` holding, per diagram, the number of lines carrying
    ``k`` and ``omega1 - k``.
    """
    n = _check_order(n)
    counts = []
    for assignment in itertools.product((0, 1), repeat=n - 2):
        on_k = assignment.count(0)
        counts.append((1 + on_k, 1 + (n - 2 - on_k)))
    return np.array(counts, dtype=int)


def chain_integrand(k, omega1: float, n: int):
    """Sum over chain diagrams of the product of line factors at loop momentum ``k``."""
    counts = chain_line_counts(n)
    k = np.asarray(k, dtype=float)
    q = omega1 - k
    terms = k[..., None] ** counts[:, 0] * q[..., None] ** counts[:, 1]
    return terms.sum(axis=-1)


def diagram_kernel_bruteforce(n: int, omega1: float, cfg: QuadratureConfig | None = None) -> float:
    """Chain-diagram kernel by explicit enumeration and quadrature over ``k``.

    Every assignment of the inner vertices to one of the two momentum lines is
    enumerated (``2**(n-2)`` diagrams) and the summed integrand is integrated
    over ``0 < k < omega1`` with measure ``dk / 2 pi``.
    """
    cfg = cfg or QuadratureConfig()
    n = _check_order(n)
    if n > MAX_BRUTEFORCE_ORDER:
        raise ValueError(f"enumeration is capped at n={MAX_BRUTEFORCE_ORDER}, got n={n}")
    if not omega1 > 0:
        raise ValueError(f"omega1 must be positive, got {omega1!r}")
    value = quad(lambda k: float(chain_integrand(k, omega1, n)), 0.0, omega1, cfg,
                 what=f"order-{n} diagram kernel")
    return value / (2.0 * math.pi)
