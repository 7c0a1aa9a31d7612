"""Quantum Brownian motion of a particle quadratically coupled to a scalar bath.

Subpackages and modules:

- :mod:`quadbath.core` -- parameters, derived scales, tolerances, errors
- :mod:`quadbath.fdt` -- fluctuation-dissipation conversions and MSD integrals
- :mod:`quadbath.linear_bath` -- linear-coupling baselines
- :mod:`quadbath.quadratic_bath` -- diagram kernel, cumulants, power-law density
- :mod:`quadbath.thermal` -- finite-temperature correlators and Langevin ensembles
- :mod:`quadbath.cli` -- command-line runs with manifests
"""

__version__ = "0.1.0"

from .core import (
    DerivedScales,
    ModelParams,
    QuadratureConfig,
    QuadratureError,
    RegimeWarning,
    derive_scales,
)

__all__ = [
    "DerivedScales",
    "ModelParams",
    "QuadratureConfig",
    "QuadratureError",
    "RegimeWarning",
    "derive_scales",
    "__version__",
]
