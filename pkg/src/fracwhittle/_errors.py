"""Exception hierarchy shared by every module."""


class FracWhittleError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(FracWhittleError, ValueError):
    """A scalar parameter (d, m, bounds, tolerances) is out of range."""


class InvalidInputError(FracWhittleError, ValueError):
    """The input series is empty or contains non-finite values."""


class NonEvaluableError(FracWhittleError):
    """An objective cannot be evaluated at the requested point."""


class EstimationFailedError(FracWhittleError):
    """No admissible point of the search grid produced a finite objective."""


class DegenerateInputError(NonEvaluableError, EstimationFailedError):
    """The data carry no spectral information (e.g. an all-zero series)."""


class HarnessError(FracWhittleError):
    """Too many Monte Carlo replications failed."""


class DegenerateInputWarning(UserWarning):
    """Issued when a quantity is returned as zero because the input is degenerate."""
