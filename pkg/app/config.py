"""
Process configuration module.
"""

import os
from dataclasses import dataclass


@dataclass
class Config:
    """Process-level settings."""
    # Root directory for run artifacts.
    output_root: str = "output"
    # Process-pool size for sweeps.
    max_workers: int = 4
    # Verify adj(M) M = det(M) I on every mixed sample.
    debug_checks: bool = False
    log_level: str = "INFO"


def _flag(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


def default_config() -> Config:
    """Return default configuration."""
    return Config()


def config_from_env() -> Config:
    """Load configuration from environment variables."""
    defaults = default_config()
    return Config(
        output_root=os.getenv("CPID_OUTPUT_ROOT", defaults.output_root),
        max_workers=int(os.getenv("CPID_MAX_WORKERS", str(defaults.max_workers))),
        debug_checks=_flag(os.getenv("CPID_DEBUG_CHECKS", str(defaults.debug_checks))),
        log_level=os.getenv("LOG_LEVEL", defaults.log_level).upper(),
    )
