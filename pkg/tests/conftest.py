from pathlib import Path

import pytest

import config
from services.builders import (
    abelian_lie_algebra,
    aff1_lie_algebra,
    exterior_algebra,
    heisenberg_lie_algebra,
    sl2_lie_algebra,
)
from utils.generate_test_data import TestDataGenerator

EXAMPLES = Path(__file__).resolve().parent.parent / "data" / "examples"


@pytest.fixture(autouse=True)
def _no_log_files(monkeypatch):
    monkeypatch.setattr(config, "LOG_TO_FILE", False)


@pytest.fixture
def examples() -> Path:
    return EXAMPLES


@pytest.fixture
def lie_algebras():
    return {
        "abelian2": abelian_lie_algebra(2),
        "heisenberg": heisenberg_lie_algebra(),
        "sl2": sl2_lie_algebra(),
        "aff1": aff1_lie_algebra(),
    }


@pytest.fixture
def triple_algebra():
    """Lambda(x, y, z) with dz = xy."""
    return exterior_algebra(["x", "y", "z"], {"z": {"xy": 1}})


@pytest.fixture
def gen():
    return TestDataGenerator(seed=7)
