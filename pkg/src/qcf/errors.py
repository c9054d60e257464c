"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the classes small and specific.
"""


class QCFError(Exception):
    """Base class for all library errors."""


class ConfigurationError(QCFError):
    """Unsupported field or otherwise invalid static configuration."""


class FieldMismatchError(QCFError, TypeError):
    """Arithmetic between elements or codes living over different fields."""


class ArgumentError(QCFError, ValueError):
    """An argument violates an operation's documented domain."""


class PreconditionError(QCFError):
    """A mathematical precondition (usually a code inclusion) failed.

    ``step`` names the construction rule that required it.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class UndefinedDistanceError(QCFError):
    """Minimum distance requested for the zero code."""


class BudgetExceededError(QCFError):
    """An exhaustive search would exceed the configured budget."""
