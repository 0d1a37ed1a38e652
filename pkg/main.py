#!/usr/bin/env python3
"""
cp-estimator - Main Entry Point

On-line estimation of the power-coefficient curve of a small wind turbine.
"""

import logging
import os
import sys

from dotenv import load_dotenv

from app.api import main as cli_main
from app.config import config_from_env


def main() -> int:
    # Load environment variables from .env.local if it exists
    env_file = os.path.join(os.path.dirname(__file__), ".env.local")
    if os.path.exists(env_file):
        load_dotenv(env_file)

    cfg = config_from_env()
    logging.basicConfig(
        level=getattr(logging, cfg.log_level, logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    logger = logging.getLogger(__name__)
    if os.path.exists(env_file):
        logger.info(f"Loaded environment from {env_file}")

    return cli_main(sys.argv[1:], cfg)


if __name__ == "__main__":
    sys.exit(main())
