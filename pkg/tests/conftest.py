import json
from typing import Callable, Tuple

import pytest

from src.config import get_settings
from src.core import SigmaAlgebra
from tests.helpers import atoms


@pytest.fixture
def problem_file(tmp_path) -> Callable[..., str]:
    """Write a problem document to a temporary file and return its path."""

    def write(document, name: str = "problem.json") -> str:
        path = tmp_path / name
        text = document if isinstance(document, str) else json.dumps(document)
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def sample_problem() -> dict:
    """The reference problem document: A discrete on 2 points, F and G on 4."""
    return {
        "x_size": 2,
        "u_size": 4,
        "A": {"partition": [[0], [1]]},
        "F": {"partition": [[0, 1], [2, 3]]},
        "G": {"generators": [[0, 1]]},
    }


@pytest.fixture
def capacity(monkeypatch):
    """Set SIGMA_CAPACITY for one test; the cached settings are reset afterwards."""

    def set_capacity(value: int) -> None:
        monkeypatch.setenv("SIGMA_CAPACITY", str(value))
        get_settings.cache_clear()

    yield set_capacity
    monkeypatch.undo()
    get_settings.cache_clear()


@pytest.fixture
def four_point_pair() -> Tuple[SigmaAlgebra, SigmaAlgebra]:
    """C = {{0,1},{2,3}} and D = {{0},{1,2},{3}} on 4 points."""
    return atoms(4, [0, 1], [2, 3]), atoms(4, [0], [1, 2], [3])
