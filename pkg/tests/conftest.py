from pathlib import Path

import numpy as np
import pytest

from app.domain.popov import triple_from_quadruple, validate_triple
from app.entities.popov_triple import PopovTriple
from app.entities.tolerance import TolerancePolicy


FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def tol() -> TolerancePolicy:
    return TolerancePolicy()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def example_triple(tol) -> PopovTriple:
    """A = [[1,1],[0,1]], B = [[2,0],[1,1]], Q = diag(0,1), R = S = 0."""
    return validate_triple(
        np.array([[1.0, 1.0], [0.0, 1.0]]),
        np.array([[2.0, 0.0], [1.0, 1.0]]),
        np.diag([0.0, 1.0]),
        np.zeros((2, 2)),
        np.zeros((2, 2)),
        tol,
    )


@pytest.fixture
def example_solution() -> np.ndarray:
    return np.diag([0.0, 1.0])


@pytest.fixture
def gdare_only_triple(tol) -> PopovTriple:
    return triple_from_quadruple(
        np.array([[-1.0, 0.0], [-5.0, -6.0]]),
        np.array([[-4.0, 0.0], [0.0, -2.0]]),
        np.array([[0.0, 1.0]]),
        np.array([[4.0, 0.0]]),
        tol,
    )


@pytest.fixture
def gdare_only_candidate() -> np.ndarray:
    return np.diag([-1.0, 1.0])


@pytest.fixture
def scalar_triple(tol) -> PopovTriple:
    return validate_triple([[0.5]], [[1.0]], [[1.0]], [[1.0]], [[0.0]], tol)


@pytest.fixture
def two_solution_triple(tol) -> PopovTriple:
    """Bloco do exemplo mais um modo escalar instável com custo só na entrada."""
    A = np.zeros((3, 3))
    A[:2, :2] = [[1.0, 1.0], [0.0, 1.0]]
    A[2, 2] = 2.0
    B = np.zeros((3, 3))
    B[:2, :2] = [[2.0, 0.0], [1.0, 1.0]]
    B[2, 2] = 1.0
    return validate_triple(A, B, np.diag([0.0, 1.0, 0.0]), np.diag([0.0, 0.0, 1.0]), np.zeros((3, 3)), tol)
