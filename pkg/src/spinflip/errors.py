"""Exception types shared across the package."""


class ToleranceInconsistency(Exception):
    """Raised when two routes to the same answer disagree beyond tolerance.

    Carries enough context to debug the disagreement: which check failed and
    the values seen on each route.
    """

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


class ValidationError(ValueError):
    """Raised for malformed inputs: bad files, bad shapes, bad parameters."""
