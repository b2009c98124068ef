"""Geradores de instâncias aleatórias para os testes de propriedades."""

from typing import Tuple

import numpy as np
import scipy.linalg

from app.domain.numerics import span
from app.domain.popov import triple_from_quadruple, validate_triple
from app.entities.popov_triple import PopovTriple
from app.entities.subspace import Subspace
from app.entities.tolerance import TolerancePolicy


def random_stable(rng: np.random.Generator, n: int, radius: float = 0.8) -> np.ndarray:
    A = rng.standard_normal((n, n))
    return A * (radius / np.max(np.abs(np.linalg.eigvals(A))))


def random_psd(rng: np.random.Generator, n: int, rank: int = None) -> np.ndarray:
    F = rng.standard_normal((rank if rank is not None else n, n))
    return F.T @ F


def random_triple(
    rng: np.random.Generator, tol: TolerancePolicy, n: int = 3, m: int = 2, p: int = None,
    radius: float = 0.8,
) -> PopovTriple:
    """Tripla com Π = [C D]ᵀ[C D] e A de raio espectral ``radius``."""
    p = p if p is not None else n + m
    A = random_stable(rng, n, radius)
    B = rng.standard_normal((n, m))
    C = rng.standard_normal((p, n))
    D = rng.standard_normal((p, m))
    return triple_from_quadruple(A, B, C, D, tol)


def random_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    M = rng.standard_normal((n, n))
    return (M + M.T) / 2


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return Q


def rotated_example_blocks(
    rng: np.random.Generator, tol: TolerancePolicy, copies: int = 2
) -> Tuple[PopovTriple, np.ndarray, Subspace]:
    """
    ``copies`` blocos do exemplo 2x2 sob mudanças ortogonais de estado e entrada.

    Retorna a tripla, sua solução PSD mínima e R₀ (dim R₀ = copies).
    """
    A = scipy.linalg.block_diag(*[np.array([[1.0, 1.0], [0.0, 1.0]])] * copies)
    B = scipy.linalg.block_diag(*[np.array([[2.0, 0.0], [1.0, 1.0]])] * copies)
    Q = np.diag([0.0, 1.0] * copies)
    n = 2 * copies
    U, V = random_orthogonal(rng, n), random_orthogonal(rng, n)
    sigma = validate_triple(U.T @ A @ U, U.T @ B @ V, U.T @ Q @ U, np.zeros((n, n)), np.zeros((n, n)), tol)
    X_bar = U.T @ Q @ U
    free = span(U.T @ np.eye(n)[:, ::2], tol)
    return sigma, X_bar, free
