"""Particle with Dirichlet (quadratic) coupling to a massless scalar bath."""

from .cumulants import (
    CumulantSeries,
    cumulant_closed,
    cumulant_seminumeric,
    loglog_slope,
    omega1_integral,
    omega1_integral_closed,
    seminumeric_series,
    slow_factor,
    slow_factor_closed,
    slow_integral_1d,
)
from .diagnostics import (
    PawulaReport,
    ck_residual,
    cumulants_to_moments,
    moments_to_cumulants,
    pawula_check,
    pawula_check_moments,
)
from .distribution import PositionDistribution, pdf_eval, pdf_moment, pdf_sample
from .kernel import (
    chain_line_counts,
    diagram_kernel_bruteforce,
    diagram_kernel_closed,
    force_psd_quadratic,
    imchi_quadratic,
    imresponse_quadratic,
)

