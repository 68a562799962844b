"""Exception hierarchy shared across the package.

Two top-level branches matter for the command line front end:
``ConfigError`` (and expression parse failures) map to exit code 1,
``PhysicsDomainError`` subclasses map to exit code 2.
"""

import math


class QfhoError(Exception):
    """Base class for all package-specific failures."""


class ConfigError(QfhoError):
    """A scenario file or CLI argument is malformed or inconsistent."""


class PhysicsDomainError(QfhoError):
    """The requested quantity is undefined or untrustworthy at these inputs."""


class ExpressionError(QfhoError, ValueError):
    """Base class for force-expression parsing failures."""


class ExpressionSyntaxError(ExpressionError):
    """Malformed expression text; ``position`` is a 0-based offset into the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class UnknownIdentifierError(ExpressionError):
    """An identifier other than ``t`` or a known function name."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier {name!r} (at position {position})")
        self.name = name
        self.position = position


class EvalDomainError(PhysicsDomainError):
    """Expression evaluation left the real domain (sqrt of a negative, 0-division, overflow)."""


class OutOfTableRange(PhysicsDomainError):
    """A tabulated force was queried outside its sampled time range."""

    def __init__(self, t: float, t_first: float, t_last: float):
        super().__init__(
            f"t={t!r} outside tabulated range [{t_first!r}, {t_last!r}]"
        )
        self.t = t
        self.t_first = t_first
        self.t_last = t_last


class TimeOutOfRange(PhysicsDomainError):
    """A trajectory was queried outside its integrated horizon."""

    def __init__(self, t: float, t_end: float):
        super().__init__(f"t={t!r} outside trajectory horizon [0, {t_end!r}]")
        self.t = t
        self.t_end = t_end


class CausticSingular(PhysicsDomainError):
    """Kernel evaluation at or beyond a caustic of the harmonic rotation.

    Carries the rotation angle; ``angle % pi`` locates the offending caustic.
    """

    def __init__(self, angle: float, detail: str = ""):
        offset = math.remainder(angle, math.pi)
        msg = (
            f"propagator singular or untrustworthy at rotation angle {angle!r} "
            f"(distance to nearest caustic {offset!r})"
        )
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.angle = angle


class GridTooCoarse(PhysicsDomainError):
    """The grid cannot resolve the kernel's oscillation in the quadrature."""

    def __init__(self, min_wavelength: float, required: float):
        super().__init__(
            f"kernel oscillation wavelength {min_wavelength:.6g} is below the "
            f"resolvable limit {required:.6g} (4 grid spacings); refine the grid "
            f"or shrink the domain"
        )
        self.min_wavelength = min_wavelength
        self.required = required


class PacketTouchesBoundary(PhysicsDomainError):
    """Wave-packet amplitude is not negligible at the grid edges."""


class NotNormalized(PhysicsDomainError):
    """An expectation value was requested for a state far from unit norm."""
