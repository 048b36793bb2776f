"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToolkitError, ValueError):
    """Malformed, non-finite, or dimensionally inconsistent input."""


class PreconditionError(ToolkitError, ValueError):
    """A documented precondition of the operation does not hold."""


class CapacityError(ToolkitError):
    """The requested object exceeds the supported size limits."""


class AccuracyError(ToolkitError):
    """An internal accuracy guard failed; raise the resolution and retry."""


class EvaluationError(ToolkitError, ArithmeticError):
    """Evaluation requested at or too close to a pole."""
