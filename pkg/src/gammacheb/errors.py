"""Exception types shared across the library."""


class GammachebError(Exception):
    """Base class for library-specific failures."""


class DomainError(GammachebError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class FitError(GammachebError):
    """Coefficient fitting failed, typically a non-finite sample value."""


class ScanExhaustedError(GammachebError):
    """A term-magnitude scan ended before the series started to grow."""


class CapacityError(GammachebError):
    """Requested precision exceeds what the configured tables support."""

    def __init__(self, message, max_digits=None):
        super().__init__(message)
        self.max_digits = max_digits


class TableParseError(GammachebError):
    """A coefficient table file is malformed."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
