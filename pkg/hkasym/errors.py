"""Exception hierarchy for hkasym.

Every error carries the process exit code the CLI uses for it.
"""


class HkasymError(Exception):
    """Base class for all hkasym errors."""

    exit_code: int = 1


class DomainError(HkasymError, ValueError):
    """An input violates an operation's precondition."""

    exit_code = 2


class PoleError(DomainError):
    """A function was evaluated at one of its poles."""


class GeometryError(DomainError):
    """A contour or sample point leaves the region it must stay in."""


class ZeroDerivativeError(DomainError):
    """A ratio needs g'(z) but g'(z) vanishes."""


class BandViolationError(DomainError):
    """The logarithmic derivative lies outside the requested band."""


class NumericalError(HkasymError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""

    exit_code = 3


class NonConvergenceError(NumericalError):
    """An iteration hit its cap before converging."""


class QuadratureStallError(NumericalError):
    """Quadrature refinement stopped improving before meeting the tolerance."""


class StepSizeError(NumericalError):
    """A finite-difference step is too large for the requested accuracy."""
