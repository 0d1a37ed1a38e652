"""
Tests for RunRepository.
"""

import pandas as pd
import pytest

from app.repository import NotFoundError, RunRepository

pytestmark = [pytest.mark.unit, pytest.mark.repository]


def test_create_run_dir(run_repo):
    """Test creating and reusing a run directory."""
    path = run_repo.create_run_dir("S1-seed0")
    assert path.is_dir()
    assert run_repo.create_run_dir("S1-seed0") == path


@pytest.mark.parametrize("name", ["", "../escape", "/abs/path"])
def test_create_run_dir_rejects_bad_names(run_repo, name):
    """Test empty, escaping and absolute names."""
    with pytest.raises(ValueError):
        run_repo.create_run_dir(name)


def test_get_missing_run(run_repo):
    """Test retrieving a run that does not exist raises NotFoundError."""
    with pytest.raises(NotFoundError):
        run_repo.get("missing")


def test_list_runs(tmp_path):
    """Test listing runs in name order, and an absent root."""
    repo = RunRepository(tmp_path / "nothing-yet")
    assert repo.list() == []
    repo.create_run_dir("b")
    repo.create_run_dir("a")
    assert [r.name for r in repo.list()] == ["a", "b"]


def test_csv_roundtrip_precision(run_repo):
    """Test CSV output keeps twelve significant digits."""
    run_dir = run_repo.create_run_dir("csv")
    frame = pd.DataFrame({"t": [0.0, 0.1], "value": [1.0 / 3.0, 2.0e-9]})
    run_repo.write_csv(run_dir, "data.csv", frame)
    text = (run_dir / "data.csv").read_text()
    assert "0.333333333333" in text
    assert "\r" not in text
    back = run_repo.read_csv(run_dir, "data.csv")
    assert back["value"].iloc[1] == pytest.approx(2.0e-9, rel=1e-11)
    assert run_repo.get("csv").to_dict()["files"] == ["data.csv"]


def test_json_is_sorted(run_repo):
    """Test JSON output has sorted keys and reads back."""
    run_dir = run_repo.create_run_dir("json")
    path = run_repo.write_json(run_dir, "summary.json", {"b": 1, "a": [1.5, None]})
    assert path.read_text().index('"a"') < path.read_text().index('"b"')
    assert run_repo.read_json(path) == {"a": [1.5, None], "b": 1}


def test_read_missing_files(run_repo):
    """Test missing CSV and JSON files raise NotFoundError."""
    run_dir = run_repo.create_run_dir("empty")
    with pytest.raises(NotFoundError):
        run_repo.read_csv(run_dir, "timeseries.csv")
    with pytest.raises(NotFoundError):
        run_repo.read_json(run_dir / "config.json")
