import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def root():
    return ROOT


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("BVKIT_CLI", str(ROOT / "build" / "tools" / "bvkit"))
    if not os.path.exists(path):
        pytest.fail(f"bvkit binary not found at {path}; build first or set BVKIT_CLI")
    return path
