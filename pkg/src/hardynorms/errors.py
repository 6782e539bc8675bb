"""Exception hierarchy shared by all modules."""


class HardyError(Exception):
    """Base class for errors raised by hardynorms."""


class DomainError(HardyError, ValueError):
    """An argument lies outside the domain of the operation."""


class NonConvergence(HardyError, RuntimeError):
    """Adaptive quadrature ran out of nodes before settling."""


class NonFinite(DomainError):
    pass


class ZeroVector(DomainError):
    pass


class ZeroMatrix(DomainError):
    pass


class SingularMatrix(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class NearCircleZero(DomainError):
    """The polynomial has a zero too close to the unit circle for log quadrature."""


class DegenerateDirection(DomainError):
    """|gamma| == |delta|: the extremal boundary map is discontinuous."""
