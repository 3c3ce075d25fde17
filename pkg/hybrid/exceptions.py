"""Errors raised across the toolkit.

Management commands turn these into CommandError with an exit code; library
callers can catch HybridError to handle all of them.
"""


class HybridError(Exception):
    """Base class for every toolkit error."""


class ProgramSyntaxError(HybridError):
    """IR text that doesn't follow the grammar."""

    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__("line %d, column %d: %s" % (line, column, message))


class SemanticError(HybridError):
    """Well-formed IR text that doesn't describe a valid program."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


class UnloweredGate(HybridError):
    """A gate the target profile lacks, with no registered decomposition."""


class OutOfRange(HybridError, ValueError):
    """A constant outside the range of its numeric kind."""


class DivideByZero(HybridError, ZeroDivisionError):
    """Reciprocal of zero."""


class BadQubitIndex(HybridError, IndexError):
    """Qubit indices that repeat or fall outside the register."""


class StepLimitExceeded(HybridError):
    """A shot ran past its instruction budget."""


class ShotError(HybridError):
    """Wraps an error raised while executing one shot."""

    def __init__(self, shot_index, error):
        self.shot_index = shot_index
        self.error = error
        super().__init__("shot %d: %s: %s" % (shot_index, type(error).__name__, error))

    def __reduce__(self):
        return (ShotError, (self.shot_index, self.error))


class DegeneratePosterior(HybridError):
    """Every posterior weight underflowed to zero."""


class RecordFormatError(HybridError):
    """A shot-record file that can't be read back."""
