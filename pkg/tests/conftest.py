from __future__ import annotations

import shutil
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

REPO_ROOT = Path(__file__).resolve().parents[1]
NAVSPL = REPO_ROOT / "fixtures" / "navspl"


@pytest.fixture(scope="session")
def navspl_dir() -> Path:
    return NAVSPL


@pytest.fixture()
def navspl_copy(tmp_path: Path) -> Path:
    """A throwaway copy of the fixture for tests that write (ledger, out dir)."""
    target = tmp_path / "navspl"
    shutil.copytree(NAVSPL, target, ignore=shutil.ignore_patterns("out"))
    return target
