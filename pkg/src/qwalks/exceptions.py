"""Exception hierarchy.

Everything raised on bad input derives from :class:`ValidationError`, which
the CLI maps to exit code 3. Numerical breakdowns map to exit code 4.
"""


class QWalksError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(QWalksError, ValueError):
    """Input failed a structural or numerical precondition."""


class FormatError(ValidationError):
    """Malformed adjacency text (ragged rows, non-integer tokens, ...)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphValueError(FormatError):
    """Adjacency entry outside {0, 1}."""


class SizeError(ValidationError):
    """Vertex count not allowed for the requested graph family."""


class ConfigurationError(ValidationError):
    """Unsupported parameter combination, e.g. an unknown Trotter order."""


class NumericalError(QWalksError, ArithmeticError):
    """A computation produced a result that violates its own contract."""


class DegenerateWalkError(NumericalError):
    """Classical walk probabilities are undefined because no paths exist."""
