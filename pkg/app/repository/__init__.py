"""
Repository module initialization.
"""

from app.repository.models import RunDirectory
from app.repository.run_repo import RunRepository
from app.repository.errors import NotFoundError

__all__ = [
    "RunDirectory",
    "RunRepository",
    "NotFoundError",
]
