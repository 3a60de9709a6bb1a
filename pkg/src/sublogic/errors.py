"""Exception hierarchy shared by all modules."""


class SublogicError(Exception):
    """Base class for every error raised by the package."""


class ArityError(SublogicError, ValueError):
    pass


class LimitError(SublogicError):
    """A configured size cap would be exceeded."""

    def __init__(self, message, threshold=None):
        super().__init__(message)
        self.threshold = threshold


class NotExpressibleError(SublogicError):
    pass


class ParseError(SublogicError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class TransformError(SublogicError):
    pass


class DispatchError(SublogicError):
    """The requested solver does not cover the instance's fragment."""


class DiscrepancyError(SublogicError):
    """Two decision procedures disagreed on the same instance."""

    def __init__(self, message, results=None):
        super().__init__(message)
        self.results = results or {}


class ClassificationError(SublogicError):
    pass


class InconclusiveError(ClassificationError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class ProfileError(SublogicError, ValueError):
    """An unknown or malformed random-instance profile."""
