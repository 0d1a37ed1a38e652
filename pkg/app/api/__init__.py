"""
Command-line API module initialization.
"""

from app.api.models import ScenarioConfig, SCENARIOS, apply_overrides, parse_override
from app.api.errors import VerificationFailed, exit_code_for
from app.api.cli import build_parser, main

__all__ = [
    "ScenarioConfig",
    "SCENARIOS",
    "apply_overrides",
    "parse_override",
    "VerificationFailed",
    "exit_code_for",
    "build_parser",
    "main",
]
