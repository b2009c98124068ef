"""Equação de Stein hermitiana X = AᵀXA + Q em coordenadas simétricas."""

import logging
from typing import List, Sequence

import numpy as np
import scipy.linalg

from app.domain.exceptions import (
    DimensionMismatch,
    NotPositiveSemidefinite,
    PreconditionViolated,
    SteinResidualTooLarge,
)
from app.domain.geometry import unobservable_subspace
from app.domain.numerics import (
    RankRevealingSVD,
    as_matrix,
    is_psd,
    kernel_basis,
    min_eigenvalue,
    require_symmetric,
    subspace_contains,
    subspace_equal,
    symmetrize,
    vectors_in,
)
from app.entities.stein_solution_set import SteinKernelReport, SteinSolutionSet
from app.entities.tolerance import TolerancePolicy


logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)


def _square(A, name: str = "A") -> np.ndarray:
    A = as_matrix(A, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} deve ser quadrada, recebido {A.shape}")
    return A


def stein_residual(A, Q, X) -> float:
    A, Q, X = as_matrix(A), as_matrix(Q), as_matrix(X)
    return float(np.linalg.norm(X - A.T @ X @ A - Q))


def is_unmixed(A, tol: TolerancePolicy) -> bool:
    """Nenhum par de autovalores (incluindo i = j) com |λᵢλⱼ - 1| ≤ √rank_rel."""
    A = _square(A)
    if A.size == 0:
        return True
    eigenvalues = scipy.linalg.eigvals(A)
    products = np.abs(np.outer(eigenvalues, eigenvalues) - 1.0)
    return bool(np.min(products) > tol.angle_tol)


def _symmetric_basis(n: int) -> List[np.ndarray]:
    """Base ortonormal das matrizes simétricas: E_ii e (E_ij + E_ji)/√2."""
    basis = []
    for i in range(n):
        for j in range(i, n):
            E = np.zeros((n, n))
            if i == j:
                E[i, i] = 1.0
            else:
                E[i, j] = E[j, i] = 1.0 / SQRT2
            basis.append(E)
    return basis


def svec(M: np.ndarray) -> np.ndarray:
    """Meia-vetorização isométrica de uma matriz simétrica."""
    n = M.shape[0]
    rows, cols = np.triu_indices(n)
    weights = np.where(rows == cols, 1.0, SQRT2)
    return M[rows, cols] * weights


def smat(v: np.ndarray, n: int) -> np.ndarray:
    rows, cols = np.triu_indices(n)
    weights = np.where(rows == cols, 1.0, 1.0 / SQRT2)
    M = np.zeros((n, n))
    M[rows, cols] = v * weights
    return symmetrize(M + M.T - np.diag(np.diag(M)))


def stein_operator_matrix(A: np.ndarray) -> np.ndarray:
    """Matriz de X ↦ X - AᵀXA nas coordenadas ``svec``."""
    n = A.shape[0]
    columns = [svec(E - A.T @ E @ A) for E in _symmetric_basis(n)]
    return np.column_stack(columns) if columns else np.zeros((0, 0))


def _canonical_sign(M: np.ndarray) -> np.ndarray:
    flat = M.reshape(-1)
    pivot = np.argmax(np.abs(flat))
    return M if flat[pivot] >= 0 else -M


def stein_solve(A, Q, tol: TolerancePolicy) -> SteinSolutionSet:
    """
    Resolver X = AᵀXA + Q por mínimos quadrados nas coordenadas simétricas.

    Args:
        A: Matriz n x n
        Q: Matriz simétrica n x n
        tol: Política de tolerâncias

    Returns:
        SteinSolutionSet: Solução particular de norma mínima (ou None se o
        sistema for inconsistente) e base das soluções homogêneas
    """
    A = _square(A)
    n = A.shape[0]
    Q = require_symmetric(Q, tol, "Q")
    if Q.shape != (n, n):
        raise DimensionMismatch(f"Q deve ser {n}x{n}, recebido {Q.shape}")
    if n == 0:
        return SteinSolutionSet(particular=np.zeros((0, 0)), homogeneous_basis=(), residual=0.0)

    system = stein_operator_matrix(A)
    rhs = svec(Q)
    svd = RankRevealingSVD(system, tol, full_matrices=True)
    r = svd.rank
    coefficients = svd.Vh[:r].T @ ((svd.U[:, :r].T @ rhs) / svd.s[:r])
    residual = float(np.linalg.norm(system @ coefficients - rhs))
    homogeneous = tuple(_canonical_sign(smat(v, n)) for v in svd.Vh[r:])

    consistent = residual <= tol.angle_tol * (1.0 + np.linalg.norm(rhs))
    particular = smat(coefficients, n) if consistent else None
    if not consistent:
        logger.info("Equação de Stein inconsistente: resíduo %.3e", residual)
    elif homogeneous:
        logger.info("Equação de Stein com família de soluções de dimensão %d", len(homogeneous))
    return SteinSolutionSet(particular=particular, homogeneous_basis=homogeneous, residual=residual)


def family_kernel_dimensions(
    solutions: SteinSolutionSet, coefficients: Sequence[Sequence[float]], tol: TolerancePolicy
) -> List[int]:
    """dim ker X para membros amostrados da família de soluções."""
    return [kernel_basis(solutions.member(alpha), tol).dim for alpha in coefficients]


def stein_kernel_report(A, Q, X, tol: TolerancePolicy) -> SteinKernelReport:
    """
    Conferir A·ker X ⊆ ker X e ker X ⊆ ker Q; se A for não misturada,
    conferir também ker X = subespaço não observável de (A, Q).

    Raises:
        SteinResidualTooLarge: Se X não resolver a equação
        NotPositiveSemidefinite: Se Q não for PSD
    """
    A = _square(A)
    Q = require_symmetric(Q, tol, "Q")
    X = require_symmetric(X, tol, "X")
    residual = stein_residual(A, Q, X)
    if residual > tol.angle_tol * (1.0 + np.linalg.norm(Q)):
        raise SteinResidualTooLarge(f"X não resolve a equação de Stein (resíduo {residual:.3e})")
    if not is_psd(Q, tol):
        raise NotPositiveSemidefinite("Q não é semidefinida positiva", min_eigenvalue(Q))

    kernel_X = kernel_basis(X, tol)
    kernel_Q = kernel_basis(Q, tol)
    unobservable = unobservable_subspace(A, Q, tol)
    unmixed = is_unmixed(A, tol)
    return SteinKernelReport(
        kernel_X=kernel_X,
        kernel_Q=kernel_Q,
        unobservable=unobservable,
        unmixed=unmixed,
        kernel_invariant=vectors_in(kernel_X, A @ kernel_X.basis, tol),
        kernel_in_kernel_Q=subspace_contains(kernel_Q, kernel_X, tol),
        kernel_equals_unobservable=subspace_equal(kernel_X, unobservable, tol) if unmixed else None,
    )


def unobservable_containment_check(A, B, F, X, tol: TolerancePolicy) -> bool:
    """
    Dado [Aᵀ; Bᵀ]·X·F = [X; 0], verificar Bᵀ(Aᵀ)ᵏX = 0 para k = 0..n-1.

    X pode ser retangular (n x q) com F q x q.

    Raises:
        PreconditionViolated: Se a hipótese [Aᵀ; Bᵀ]·X·F = [X; 0] falhar
    """
    A = _square(A)
    n = A.shape[0]
    B = as_matrix(B, "B").reshape(n, -1)
    X = as_matrix(X, "X").reshape(n, -1)
    F = _square(F, "F")
    if F.shape[0] != X.shape[1]:
        raise DimensionMismatch(f"F deve ser {X.shape[1]}x{X.shape[1]}, recebido {F.shape}")

    scale = 1.0 + np.linalg.norm(X)
    precondition = np.vstack([A.T @ X @ F - X, B.T @ X @ F])
    if np.linalg.norm(precondition) > tol.angle_tol * scale:
        raise PreconditionViolated("[Aᵀ; Bᵀ]·X·F ≠ [X; 0]")

    power = X
    for _ in range(n):
        if np.linalg.norm(B.T @ power) > tol.angle_tol * scale:
            return False
        power = A.T @ power
    return True
