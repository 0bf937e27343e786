"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad vertex id, unparsable file, ...)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(ValueError):
    """An operation was called on data that violates its documented contract."""


class SingularMatrixError(ArithmeticError):
    """Raised when a nonsingular matrix was required.

    ``rank`` holds the rank found during elimination.
    """

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class ProbabilisticFailure(RuntimeError):
    """A randomized routine exhausted its retry budget without a verified answer."""


class InternalError(RuntimeError):
    """A self-check inside an algorithm failed."""
