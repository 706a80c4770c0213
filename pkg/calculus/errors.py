"""
Exception hierarchy for the suspension calculus toolkit.
"""


class SuspCalcError(Exception):
    """Base class for every error raised by the library."""


class IllFormedError(SuspCalcError):
    """Arithmetic underflow/overflow or a constructor given an impossible value."""


class CategoryError(SuspCalcError):
    """A term was given where an environment was expected, or the reverse."""


class RewriteError(SuspCalcError):
    """A positioned step could not be performed."""


class ConfigurationError(SuspCalcError):
    """Rule set, strategy or fuel settings that cannot be used together."""


class ConstraintError(SuspCalcError):
    """A translation precondition does not hold."""


class BridgeError(SuspCalcError):
    """An expression lies outside the calculus a bridge translates into."""


class ParseError(SuspCalcError):
    """Concrete syntax error, carrying a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
