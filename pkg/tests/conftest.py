import csv
import math
from pathlib import Path

import numpy as np
import pytest

from walkmem.qubit import Qubit, random_qubit

SQRT_HALF = 1 / math.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(2013)


@pytest.fixture
def qubits(rng):
    return [random_qubit(rng) for _ in range(20)]


@pytest.fixture
def zero():
    return Qubit(1, 0)


@pytest.fixture
def plus():
    return Qubit(SQRT_HALF, SQRT_HALF)


def read_table(path: Path) -> tuple[str, list[dict[str, str]]]:
    """
    (provenance comment line, rows) of a CSV artifact.
    """
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# ")
    return lines[0], list(csv.DictReader(lines[1:]))


def assert_qubits_close(first: Qubit, second: Qubit, atol: float = 1e-10) -> None:
    np.testing.assert_allclose(first.vector, second.vector, rtol=0, atol=atol)
