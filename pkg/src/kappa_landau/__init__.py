"""Landau levels of a charged particle on surfaces of constant curvature.

One real parameter ``kappa`` covers the sphere (``kappa > 0``), the plane
(``kappa = 0``) and the hyperbolic plane (``kappa < 0``).  The package
computes exact spectra, closed-form eigenfunctions, inter-level ladder
operators, the horocyclic Morse reduction and the planar contraction, and
checks the underlying identities numerically (:mod:`kappa_landau.verify`).

Quick start::

    >>> from kappa_landau import ModelParams, energy
    >>> energy(ModelParams(1, 2), l=0)
    Fraction(1, 1)
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ChartDomainError,
    ConvergenceError,
    DomainError,
    LandauError,
    ParameterError,
    PoleError,
    QuantizationError,
    TangentPoleError,
)
from .representation import ModelParams, RadialFunction, RadialOperator, hamiltonian  # noqa: E402
from .spectrum import (  # noqa: E402
    HIGHEST,
    LOWEST,
    StateLabel,
    admissible_levels,
    energy,
    state_density,
)
from .eigenfunctions import radial_eigenfunction, radial_values  # noqa: E402

__all__ = [
    "__version__",
    "ModelParams",
    "RadialFunction",
    "RadialOperator",
    "StateLabel",
    "LOWEST",
    "HIGHEST",
    "energy",
    "state_density",
    "admissible_levels",
    "hamiltonian",
    "radial_eigenfunction",
    "radial_values",
    "LandauError",
    "ParameterError",
    "QuantizationError",
    "DomainError",
    "ChartDomainError",
    "TangentPoleError",
    "PoleError",
    "ConvergenceError",
]
