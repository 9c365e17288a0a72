class CorpError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(CorpError, ValueError):
    """Input data or parameters violate a documented precondition."""
