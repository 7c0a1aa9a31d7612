"""Zero-temperature diffusion: linear baths versus the quadratic bath.

Run with ``python3 demos/01_anomalous_diffusion.py``.
"""

# %%
import math

import numpy as np

from quadbath.core import QuadratureConfig
from quadbath.fdt import msd_from_imresponse
from quadbath.linear_bath import LinearCase, imresponse_linear
from quadbath.quadratic_bath import imresponse_quadratic

cfg = QuadratureConfig(uv_cutoff=1e3)
times = np.geomspace(1e2, 1e4, 5)

# %% All three absorptive responses go like 1/omega at small frequency, so the
# mean-square displacement grows only logarithmically.
responses = {
    "linear A": imresponse_linear(LinearCase("A"), 1.0),
    "linear B": imresponse_linear(LinearCase("B"), 1.0),
    "quadratic": imresponse_quadratic(1.0),
}
for name, imR in responses.items():
    msd = np.array([msd_from_imresponse(imR, t, cfg) for t in times])
    slope = np.polyfit(np.log(times), msd, 1)[0]
    print(f"{name:10s} MSD(t) = {np.array2string(msd, precision=4)}  d MSD / d ln t = {slope:.5f}")

# %% The quadratic coefficient is lam^2 / (3 pi^2) with lam = 1/m.
print("expected quadratic coefficient:", 1 / (3 * math.pi**2))
