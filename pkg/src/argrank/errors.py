"""Exception hierarchy shared by every module."""


class ArgRankError(Exception):
    """Base class for all library errors."""


class ArgumentIndexError(ArgRankError, IndexError):
    """An argument id outside ``0..n-1`` was used."""


class CapacityError(ArgRankError):
    """The framework is larger than the configured argument cap."""


class ParseError(ArgRankError, ValueError):
    """Malformed input text. Carries 1-based ``line`` and ``column`` when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class PremiseViolation(ArgRankError):
    """The premise of a conditional axiom does not hold, so the axiom is not applicable."""
