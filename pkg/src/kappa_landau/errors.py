"""Exception hierarchy shared by every module of the package."""


class LandauError(Exception):
    """Base class for all package errors."""


class ParameterError(LandauError, ValueError):
    """Invalid model parameters (for instance a flux ratio that is not an integer)."""


class QuantizationError(ParameterError):
    """``2*beta/kappa`` is not an integer although the model requires it."""


class ChartDomainError(LandauError, ValueError):
    """A point lies outside the domain of the requested coordinate chart."""


class TangentPoleError(LandauError, ArithmeticError):
    """The curvature-dependent tangent ``S/C`` was requested where ``C`` vanishes."""


class PoleError(LandauError, ArithmeticError):
    """A closed-form expression hit a genuine pole."""


class DomainError(LandauError, ValueError):
    """A state label lies outside the admissible range of its family."""


class ConvergenceError(LandauError, RuntimeError):
    """A numerical procedure failed its convergence gate."""
