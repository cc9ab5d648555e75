"""Exception types raised by the solvers."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to meet its accuracy contract."""


class RealnessViolation(NumericalError):
    """Root isolation did not find the expected number of real simple roots."""


class DegenerateTruncation(NumericalError):
    """The leading coefficient of a truncated series vanishes."""


class ConditioningError(NumericalError):
    """The overlap matrix is not positive definite after filtering."""


class VerificationFailure(AssertionError):
    """A property check on computed data failed."""
