"""
Run artifact repository backed by the filesystem.
"""

import json
import logging
from pathlib import Path
from typing import Any, List, Union

import pandas as pd

from app.repository.errors import NotFoundError
from app.repository.models import RunDirectory

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


class RunRepository:
    """Per-run directories under a common output root."""

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)

    def create_run_dir(self, name: str) -> Path:
        """Create (or reuse) the directory for ``name``."""
        if not name or Path(name).is_absolute() or ".." in Path(name).parts:
            raise ValueError(f"invalid run name: {name!r}")
        path = self.root / name
        path.mkdir(parents=True, exist_ok=True)
        return path

    def get(self, name: str) -> RunDirectory:
        """Retrieve an existing run directory."""
        path = self.root / name
        if not path.is_dir():
            raise NotFoundError(f"run not found: {name}")
        return RunDirectory(name=name, path=path, files=sorted(p.name for p in path.iterdir()))

    def list(self) -> List[RunDirectory]:
        if not self.root.is_dir():
            return []
        return [self.get(p.name) for p in sorted(self.root.iterdir()) if p.is_dir()]

    def write_csv(self, run_dir: Path, filename: str, frame: pd.DataFrame) -> Path:
        path = Path(run_dir) / filename
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.info(f"Wrote {path} ({len(frame)} rows)")
        return path

    def write_json(self, run_dir: Path, filename: str, payload: Any) -> Path:
        path = Path(run_dir) / filename
        with open(path, "w") as f:
            json.dump(payload, f, indent=2, sort_keys=True, allow_nan=True)
            f.write("\n")
        logger.info(f"Wrote {path}")
        return path

    def read_csv(self, run_dir: Path, filename: str) -> pd.DataFrame:
        path = Path(run_dir) / filename
        if not path.is_file():
            raise NotFoundError(f"file not found: {path}")
        return pd.read_csv(path)

    def read_json(self, path: Union[str, Path]) -> Any:
        """Load a JSON document such as a scenario config file."""
        path = Path(path)
        if not path.is_file():
            raise NotFoundError(f"file not found: {path}")
        with open(path) as f:
            return json.load(f)
