"""
Repository errors module.
"""


class NotFoundError(Exception):
    """Raised when a config file or run directory does not exist."""
    pass
