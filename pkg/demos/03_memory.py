"""The power-law density is not the law of a Markov process.

Run with ``python3 demos/03_memory.py``.
"""

# %%
import numpy as np

from quadbath.core import DerivedScales
from quadbath.quadratic_bath import PositionDistribution, ck_residual, pdf_eval

scales = DerivedScales.from_cutoffs(lam_tilde=1.0, v=0.2)

# %% Convolving the density at t1 with the one at t2 should give the density at
# t1 + t2 for a Markov process. Here the sup-norm gap is of order one.
for t1, t2 in [(50, 50), (50, 100), (100, 100)]:
    print(t1, t2, ck_residual(t1, t2, scales))

# %% The density itself, at a few positions.
dist = PositionDistribution.at_time(scales, 100.0)
x = np.linspace(0, 25, 6)
print(np.c_[x, pdf_eval(dist, x)])
