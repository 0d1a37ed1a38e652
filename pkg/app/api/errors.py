"""
Mapping of failures to process exit codes.
"""

import logging

from pydantic import ValidationError

from app.model.errors import NumericAbortError, PreconditionError
from app.repository.errors import NotFoundError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_VERIFY = 3


class VerificationFailed(Exception):
    """Raised when one or more verification checks fail."""

    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__(f"verification failed: {', '.join(self.failed)}")


def exit_code_for(err: Exception) -> int:
    """Convert an exception to a process exit code."""
    if isinstance(err, VerificationFailed):
        return EXIT_VERIFY
    if isinstance(err, NumericAbortError):
        return EXIT_NUMERIC
    if isinstance(err, (ValidationError, PreconditionError, NotFoundError, ValueError)):
        return EXIT_CONFIG
    logger.exception(f"Unexpected error: {err}")
    return EXIT_CONFIG
