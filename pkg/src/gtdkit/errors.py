"""Exception types shared across the package."""


class GtdError(Exception):
    """Base class for all errors raised by gtdkit."""


class OutOfDomainError(GtdError):
    """A coordinate pair lies outside the chart or metric domain."""


class SingularMetricError(GtdError):
    """Metric determinant fell below the invertibility floor."""


class StepUnderflowError(GtdError):
    """Integrator step size shrank below the resolvable minimum."""


class ThirdLawError(GtdError):
    """The minimum-entropy state was used as a process endpoint."""
