"""
Model errors module.
"""

from typing import Optional


class PreconditionError(ValueError):
    """Raised when an operation is called outside its domain."""
    pass


class NumericAbortError(RuntimeError):
    """Raised when a simulation leaves its admissible region."""

    def __init__(self, message: str, t: Optional[float] = None):
        super().__init__(message)
        self.t = t
