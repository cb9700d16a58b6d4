"""Exception types. The CLI maps each family to an exit status."""


class GoldbachLabError(Exception):
    exit_status = 1


class DomainError(GoldbachLabError, ValueError):
    """Argument outside an operation's domain."""

    exit_status = 2


class CapacityError(DomainError):
    """Requested size is below the minimum or above the configured cap."""


class IngestionError(GoldbachLabError):
    """Malformed input data file."""

    exit_status = 3

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PrecisionError(GoldbachLabError, ArithmeticError):
    """A transform result drifted too far from an integer lattice."""

    exit_status = 4
