"""Exception types raised across the stcov package."""


class StcovError(Exception):
    """Base class for all stcov errors."""


class InvalidParameterError(StcovError):
    """Model or configuration parameters violate their domain constraints."""


class QuadratureConvergenceError(StcovError):
    """Adaptive quadrature failed to reach the requested tolerances.

    Carries the best available estimate and the achieved error bound so
    callers can decide whether the partial result is usable.
    """

    def __init__(self, message, best_estimate=None, achieved_error=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.achieved_error = achieved_error


class UnsupportedDimensionError(StcovError):
    """Requested spatial dimension is outside the supported range."""


class DataFormatError(StcovError):
    """Malformed input file; ``line`` holds the 1-based offending line."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class DuplicateObservationError(DataFormatError):
    """The same (station, time) cell appears more than once."""


class IrregularTimeGridError(DataFormatError):
    """Time stamps do not lie on a fixed-step grid."""


class InvalidLatitudeError(StcovError):
    """Latitude outside (-90, 90) degrees."""


class InsufficientDataError(StcovError):
    """Not enough observations to perform the requested estimate."""


class DegenerateDataError(StcovError):
    """Input data carry no usable signal (e.g. constant variogram)."""


class NonconvergenceError(StcovError):
    """Optimizer exhausted its budget; ``best`` holds the best iterate."""

    def __init__(self, message, best=None, best_value=None):
        super().__init__(message)
        self.best = best
        self.best_value = best_value


class FitStageError(StcovError):
    """A stage of the two-stage fit failed; wraps the underlying error."""

    def __init__(self, stage, cause):
        super().__init__(f"{stage} stage failed: {cause}")
        self.stage = stage
        self.cause = cause


class RankDeficiencyError(StcovError):
    """Regression design matrix is rank deficient."""


class SizeCapError(StcovError):
    """Sampling design exceeds the dense-factorization size cap."""


class FactorizationError(StcovError):
    """Cholesky factorization failed even after jitter escalation."""


class EigensolverError(StcovError):
    """Symmetric eigensolver did not converge."""
