"""Higher cumulants of the quadratically coupled particle and the power-law density.

Run with ``python3 demos/02_cumulants_and_distribution.py``.
"""

# %%
import numpy as np

from quadbath.core import ModelParams, derive_scales
from quadbath.quadratic_bath import (
    PositionDistribution,
    cumulant_closed,
    cumulant_seminumeric,
    diagram_kernel_bruteforce,
    diagram_kernel_closed,
    loglog_slope,
    pawula_check_moments,
    pdf_moment,
    pdf_sample,
)

params = ModelParams(m=1.0, gamma=0.1)
scales = derive_scales(params)
print(scales)

# %% The summed chain diagrams collapse to omega^(n+1) / (12 pi).
for n in (2, 4, 6, 8):
    print(n, diagram_kernel_bruteforce(n, 1.0), diagram_kernel_closed(n, 1.0))

# %% Fourth cumulant: frequency integrals done numerically vs the closed law.
times = np.geomspace(1e3, 1e5, 5)
semi = [cumulant_seminumeric(4, t, params) for t in times]
closed = [cumulant_closed(4, t, scales) for t in times]
for t, a, b in zip(times, semi, closed):
    print(f"t={t:9.0f}  seminumeric={a:.6e}  closed={b:.6e}")
print("log-log slope:", loglog_slope(times, semi))

# %% The cumulants are the moments of a truncated inverse-cube density.
t = 1e3
dist = PositionDistribution.at_time(scales, t)
for n in (4, 6, 8):
    print(n, pdf_moment(n, dist), cumulant_closed(n, t, scales))
print("mass:", dist.mass)

# %% Sampling by inverse transform, and moment positivity.
x = pdf_sample(dist, 10**6, seed=1)
m2, m4 = (pdf_moment(k, dist) / dist.mass for k in (2, 4))
# heavy tail: the standard error of <X^2> is set by the fourth moment
print("sample <X^2>:", np.mean(x**2), "analytic:", m2, "+-", np.sqrt((m4 - m2**2) / x.size))
print(pawula_check_moments({k: pdf_moment(k, dist) for k in range(9)}))
