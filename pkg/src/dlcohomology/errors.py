"""Exception types raised across the package."""


class InvalidArgument(ValueError):
    pass


class InvalidHook(ValueError):
    """Raised when (x, x + d) is not an addable hook of the given beta-set."""


class UnsupportedRegime(ValueError):
    """Raised outside the parameter range ``m <= n < 2m``."""


class PreconditionViolation(RuntimeError):
    """The torsion-free hypothesis is not guaranteed and no override was given."""


class ModelViolation(RuntimeError):
    """A structural invariant of the Brauer line model failed."""


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    ``report`` carries the structured details.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
