"""
Repository models module.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List


@dataclass
class RunDirectory:
    """Artifacts of one run on disk."""
    name: str
    path: Path
    files: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"name": self.name, "path": str(self.path), "files": self.files}
