"""Exception hierarchy shared by all layers."""


class LPKError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrix(LPKError):
    pass


class NotSymmetric(LPKError):
    pass


class DimensionMismatch(LPKError):
    pass


class InternalInconsistency(LPKError):
    """Two independent evaluations of the same quantity disagreed."""


class SigmaZero(LPKError):
    pass


class BadDimension(LPKError):
    pass


class InputError(LPKError):
    """Problem with a user-supplied document; carries a location string."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ParseError(InputError):
    pass


class SchemaError(InputError):
    pass


class ValidationError(InputError):
    pass
