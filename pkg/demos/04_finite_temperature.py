"""Finite temperature: exponential memory loss and ordinary diffusion.

Run with ``python3 demos/04_finite_temperature.py``.
"""

# %%
import math

import numpy as np

from quadbath.thermal import (
    LangevinConfig,
    decay_rate,
    empirical_cumulants,
    force_corr_thermal,
    force_psd_thermal,
    langevin_ensemble,
    msd_slope,
    phi_corr_thermal,
    transport,
)

# %% Correlators decay at rates 2 pi T (field) and 4 pi T (force).
for T in (0.5, 1.0, 2.0):
    print(T, decay_rate(phi_corr_thermal, T) / (math.pi * T), decay_rate(force_corr_thermal, T) / (math.pi * T))

# %% The zero-frequency force spectrum scales as T^3.
temps = np.array([0.25, 0.5, 1.0, 2.0])
cf0 = np.array([force_psd_thermal(0.0, T) for T in temps])
print("C_F(0) exponent:", np.polyfit(np.log(temps), np.log(cf0), 1)[0])

# %% Langevin ensembles: MSD grows like D t with D = 1/T, and the
# distribution is Gaussian.
for T in (1.0, 2.0):
    ens = langevin_ensemble(LangevinConfig(T=T, dt=0.02, steps=100, paths=50_000, record_every=10))
    slope, err = msd_slope(ens)
    k4, e4 = empirical_cumulants(ens, 4, 2.0)
    print(f"T={T}: slope {slope:.4f} +- {err:.4f} (D = {transport(T)[1]}), kappa_4 = {k4:.4f} +- {e4:.4f}")
