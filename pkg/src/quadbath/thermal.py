"""Finite-temperature correlators, transport and the overdamped Langevin limit.

Prefactors of the scaling laws are set to one: ``mu = T**-2``, ``D = 1/T``,
``Im chi = T**2 omega``. The Langevin model is ``T^2 dX/dt = F`` with white
force noise of weight ``T^3``.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ._numerics import quad
from .core import QuadratureConfig, RegimeWarning

WORKERS_ENV = "QUADBATH_THREADS"
CHUNK = 1024


def _csch(x):
    # 2 e^-x / (1 - e^-2x), stable for large x
    x = np.asarray(x, dtype=float)
    e = np.exp(-x)
    return 2.0 * e / -np.expm1(-2.0 * x)


def _check_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("correlators diverge at t = 0; need t > 0")
    return t


def phi_corr_thermal(t, T: float):
    """Field-gradient correlator ``T^2 csch^2(pi t T)``; ``1/(pi t)^2`` at T = 0."""
    t = _check_time(t)
    if T < 0:
        raise ValueError("temperature must be >= 0")
    if T == 0:
        out = 1.0 / (math.pi * t) ** 2
    else:
        out = T**2 * _csch(math.pi * t * T) ** 2
    return float(out) if out.ndim == 0 else out


def force_corr_thermal(t, T: float):
    """Connected force correlator ``T^4 csch^4(pi t T)``, the square of :func:`phi_corr_thermal`."""
    out = np.asarray(phi_corr_thermal(t, T)) ** 2
    return float(out) if out.ndim == 0 else out


def force_psd_thermal(omega: float, T: float, cfg: QuadratureConfig | None = None) -> float:
    """Symmetrized force spectrum from a numerical Fourier transform of the correlator.

    The correlator is analytic in the strip ``-1/T < Im t < 0``; moving the
    time contour to ``Im t = -1/(2T)`` turns ``csch^4`` into ``sech^4`` and
    removes the ``t = 0`` singularity, leaving

        C_F(omega) = cosh(omega / 2T) * 2 int_0^inf T^4 sech^4(pi T s) cos(omega s) ds.
    """
    cfg = cfg or QuadratureConfig()
    if not T > 0:
        raise ValueError("finite-temperature spectrum needs T > 0")
    s_max = 40.0 / (math.pi * T)  # sech^4 < 1e-68 beyond

    def f(s):
        return T**4 / math.cosh(math.pi * T * s) ** 4

    if omega == 0:
        integral = quad(f, 0.0, s_max, cfg, what="thermal force spectrum")
    else:
        integral = quad(f, 0.0, s_max, cfg, what="thermal force spectrum", weight="cos", wvar=abs(omega))
    return math.cosh(omega / (2.0 * T)) * 2.0 * integral


def imchi_thermal(omega, T: float):
    """Low-frequency friction kernel ``T^2 omega``.

    Warns with :class:`RegimeWarning` when ``|omega| > T/2``.
    """
    if not T > 0:
        raise ValueError("temperature must be positive")
    w = np.asarray(omega, dtype=float)
    if np.any(np.abs(w) > T / 2):
        warnings.warn("imchi_thermal is a small-frequency law; |omega| > T/2", RegimeWarning, stacklevel=2)
    out = T**2 * w
    return float(out) if out.ndim == 0 else out


def transport(T: float) -> tuple[float, float]:
    """Mobility ``1/T^2`` and diffusion constant ``T * mobility = 1/T``."""
    if not T > 0:
        raise ValueError("mobility diverges at T = 0")
    mu = 1.0 / T**2
    return mu, T * mu


def decay_rate(corr, T: float, tT=(2.0, 6.0), points: int = 41) -> float:
    """Fitted exponential decay rate of ``corr(t, T)`` for ``t*T`` in ``tT``."""
    t = np.linspace(tT[0], tT[1], points) / T
    slope = np.polyfit(t, np.log(corr(t, T)), 1)[0]
    return float(-slope)


# --- Langevin ensemble -----------------------------------------------------


@dataclass(frozen=True)
class LangevinConfig:
    """Overdamped Langevin run at temperature ``T``.

    ``dt * T`` must stay below 0.1 so the thermal time is resolved.
    Positions are stored every ``record_every`` steps.
    """

    T: float
    dt: float
    steps: int
    paths: int
    seed: int = 20240601
    record_every: int = 1

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("temperature must be positive")
        if not (self.dt > 0 and self.dt * self.T < 0.1):
            raise ValueError(f"need 0 < dt*T < 0.1, got dt*T={self.dt * self.T:g}")
        if self.steps < 1 or self.paths < 1 or self.record_every < 1:
            raise ValueError("steps, paths and record_every must be >= 1")

    @property
    def friction(self) -> float:
        return self.T**2

    @property
    def noise_weight(self) -> float:
        return self.T**3

    @property
    def step_scale(self) -> float:
        return math.sqrt(self.noise_weight * self.dt) / self.friction


@dataclass(frozen=True, eq=False)
class TrajectoryEnsemble:
    times: np.ndarray
    paths: np.ndarray  # (n_paths, n_times), paths[:, 0] == 0
    path_ids: np.ndarray
    seed: int

    def index_of(self, t: float) -> int:
        i = int(np.argmin(np.abs(self.times - t)))
        if not math.isclose(self.times[i], t, rel_tol=1e-9, abs_tol=1e-12):
            raise ValueError(f"t={t!r} is not on the recorded grid")
        return i


def path_key(seed: int) -> np.ndarray:
    return np.random.SeedSequence(seed).generate_state(2, np.uint64)


def path_generator(seed: int, path: int) -> np.random.Generator:
    """Counter-based stream for one path: shared key, path index in the top counter word."""
    counter = np.array([0, 0, 0, path], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=path_key(seed), counter=counter))


def _increments(cfg: LangevinConfig, first: int, last: int) -> np.ndarray:
    key = path_key(cfg.seed)
    out = np.empty((last - first, cfg.steps))
    for row, j in enumerate(range(first, last)):
        counter = np.array([0, 0, 0, j], dtype=np.uint64)
        out[row] = np.random.Generator(np.random.Philox(key=key, counter=counter)).standard_normal(cfg.steps)
    return out


def _chunk(cfg: LangevinConfig, first: int, last: int) -> np.ndarray:
    x = np.cumsum(cfg.step_scale * _increments(cfg, first, last), axis=1)
    x = x[:, cfg.record_every - 1 :: cfg.record_every]
    return np.hstack([np.zeros((last - first, 1)), x])


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def langevin_ensemble(cfg: LangevinConfig, workers: int | None = None) -> TrajectoryEnsemble:
    """Integrate ``X_{i+1} = X_i + sqrt(T^3 dt)/T^2 * xi_i`` for every path.

    Path ``j`` draws its normal deviates from its own Philox stream keyed by
    the master seed, so trajectories do not depend on ``workers`` or on how
    paths are chunked.
    """
    workers = workers or default_workers()
    bounds = [(a, min(a + CHUNK, cfg.paths)) for a in range(0, cfg.paths, CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _chunk(cfg, *b), bounds))
    else:
        parts = [_chunk(cfg, *b) for b in bounds]
    recorded = np.arange(0, cfg.steps + 1, cfg.record_every)
    return TrajectoryEnsemble(
        times=recorded * cfg.dt,
        paths=np.vstack(parts),
        path_ids=np.arange(cfg.paths),
        seed=cfg.seed,
    )


def _jackknife(values: np.ndarray, estimator, groups: int) -> tuple[float, float]:
    """Estimate and delete-one-group jackknife error of ``estimator`` over rows of ``values``."""
    full = estimator(values)
    idx = np.array_split(np.arange(len(values)), groups)
    mask = np.ones(len(values), dtype=bool)
    partial = []
    for g in idx:
        mask[g] = False
        partial.append(estimator(values[mask]))
        mask[g] = True
    partial = np.asarray(partial)
    err = np.sqrt((groups - 1) / groups * np.sum((partial - partial.mean(axis=0)) ** 2, axis=0))
    return full, err


def empirical_cumulants(ensemble: TrajectoryEnsemble, n: int, t: float, groups: int = 50):
    """k-statistic estimate of the ``n``-th cumulant of ``X(t)`` with a jackknife error.

    Supports ``1 <= n <= 4``. Returns ``(value, error)``.
    """
    if n not in (1, 2, 3, 4):
        raise ValueError("k-statistics are available for orders 1 to 4")
    x = ensemble.paths[:, ensemble.index_of(t)]
    if len(x) < max(2 * groups, 10 * n):
        raise ValueError(f"too few paths ({len(x)}) for a jackknife with {groups} groups")
    value, err = _jackknife(x, lambda v: stats.kstat(v, n), groups)
    return float(value), float(err)


def msd_curve(ensemble: TrajectoryEnsemble) -> np.ndarray:
    return np.mean(ensemble.paths**2, axis=0)


def msd_slope(ensemble: TrajectoryEnsemble, groups: int = 50) -> tuple[float, float]:
    """Least-squares slope through the origin of the ensemble MSD, with jackknife error."""
    t = ensemble.times

    def slope(x):
        msd = np.mean(x**2, axis=0)
        return np.dot(t, msd) / np.dot(t, t)

    value, err = _jackknife(ensemble.paths, slope, groups)
    return float(value), float(err)
