"""
Oracle report models.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class OracleReport:
    """Outcome of one verification check."""
    name: str
    residual: float
    tolerance: float
    passed: Optional[bool] = None
    metadata: Dict[str, Any] = field(default_factory=dict)
    runtime: float = 0.0
    error: Optional[str] = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = self.error is None and self.residual <= self.tolerance

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "metadata": self.metadata,
            "runtime": self.runtime,
            "error": self.error,
        }
