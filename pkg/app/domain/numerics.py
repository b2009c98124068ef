"""Álgebra linear densa com tolerâncias: posto, pseudo-inversa, subespaços e PSD."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from app.domain.exceptions import (
    DimensionMismatch,
    InvariantViolation,
    NonFiniteEntries,
    NotPositiveSemidefinite,
    NotSymmetric,
)
from app.entities.subspace import Subspace
from app.entities.tolerance import TolerancePolicy


logger = logging.getLogger(__name__)


def as_matrix(M, name: str = "M") -> np.ndarray:
    """
    Converter para matriz 2-D finita (real, ou complexa se a entrada for complexa).

    Raises:
        NonFiniteEntries: Se houver NaN ou infinito
    """
    array = np.asarray(M)
    if not np.iscomplexobj(array):
        array = array.astype(float)
    array = np.atleast_2d(array)
    if array.ndim != 2:
        raise DimensionMismatch(f"{name} deve ser uma matriz, recebido ndim={array.ndim}")
    if not np.all(np.isfinite(array)):
        raise NonFiniteEntries(f"{name} contém entradas não finitas")
    return array


def as_vector(v, length: int, name: str = "x0") -> np.ndarray:
    vector = np.asarray(v, dtype=float).reshape(-1)
    if vector.shape[0] != length:
        raise DimensionMismatch(f"{name} deve ter {length} entradas, recebido {vector.shape[0]}")
    if not np.all(np.isfinite(vector)):
        raise NonFiniteEntries(f"{name} contém entradas não finitas")
    return vector


def symmetrize(M: np.ndarray) -> np.ndarray:
    return (M + M.T) / 2


def is_symmetric(M: np.ndarray, tol: TolerancePolicy) -> bool:
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        return False
    scale = 1.0 + np.linalg.norm(M)
    return bool(np.linalg.norm(M - M.T) <= tol.angle_tol * scale)


def require_symmetric(M, tol: TolerancePolicy, name: str) -> np.ndarray:
    """Validar simetria e devolver a parte simétrica."""
    M = as_matrix(M, name)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{name} deve ser quadrada, recebido {M.shape}")
    if not is_symmetric(M, tol):
        raise NotSymmetric(f"{name} não é simétrica")
    return symmetrize(M)


class RankRevealingSVD:
    """SVD com decisão de posto pelo corte relativo/absoluto da política."""

    def __init__(self, matrix: np.ndarray, tol: TolerancePolicy, full_matrices: bool = False):
        self.matrix = as_matrix(matrix)
        rows, cols = self.matrix.shape
        self.empty = self.matrix.size == 0
        if self.empty:
            self.U = np.eye(rows)
            self.s = np.zeros(0)
            self.Vh = np.eye(cols)
            self.rank = 0
            return
        self.U, self.s, self.Vh = scipy.linalg.svd(self.matrix, full_matrices=full_matrices)
        cutoff = max(tol.rank_rel * max(rows, cols) * self.s[0], tol.rank_abs)
        self.rank = int(np.sum(self.s > cutoff))


def _canonical_columns(basis: np.ndarray) -> np.ndarray:
    """Fixar o sinal de cada coluna: entrada de maior módulo positiva."""
    if basis.size == 0:
        return basis
    pivots = np.argmax(np.abs(basis), axis=0)
    signs = np.sign(basis[pivots, np.arange(basis.shape[1])])
    signs[signs == 0] = 1.0
    return basis * signs


def rank_svd(M, tol: TolerancePolicy) -> int:
    """Posto numérico: valores singulares acima de rank_rel·max(m,n)·σ_max."""
    return RankRevealingSVD(M, tol).rank


def pinv(M, tol: TolerancePolicy) -> np.ndarray:
    """
    Pseudo-inversa de Moore-Penrose truncada no posto numérico.

    Args:
        M: Matriz real
        tol: Política de tolerâncias

    Returns:
        np.ndarray: M† (simétrica quando M é simétrica)
    """
    M = as_matrix(M)
    svd = RankRevealingSVD(M, tol)
    if svd.rank == 0:
        return np.zeros((M.shape[1], M.shape[0]))
    r = svd.rank
    result = svd.Vh[:r].conj().T @ np.diag(1.0 / svd.s[:r]) @ svd.U[:, :r].conj().T
    if M.shape[0] == M.shape[1] and np.allclose(M, M.T, rtol=0, atol=tol.rank_abs):
        result = symmetrize(result)
    return result


def kernel_basis(M, tol: TolerancePolicy) -> Subspace:
    """Base ortonormal do núcleo, com dim(núcleo) + posto = colunas."""
    M = as_matrix(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return Subspace.full(cols)
    svd = RankRevealingSVD(M, tol, full_matrices=True)
    return Subspace(cols, _canonical_columns(svd.Vh[svd.rank:].T))


def image_basis(M, tol: TolerancePolicy) -> Subspace:
    """Base ortonormal da imagem (espaço coluna)."""
    M = as_matrix(M)
    rows = M.shape[0]
    if M.shape[1] == 0:
        return Subspace.zero(rows)
    svd = RankRevealingSVD(M, tol)
    return Subspace(rows, _canonical_columns(svd.U[:, : svd.rank]))


def span(vectors, tol: TolerancePolicy, ambient_dim: int = None) -> Subspace:
    vectors = np.asarray(vectors, dtype=float)
    if vectors.size == 0:
        return Subspace.zero(ambient_dim if ambient_dim is not None else vectors.shape[0])
    return image_basis(vectors, tol)


def orthogonal_complement(U: Subspace, tol: TolerancePolicy) -> Subspace:
    if U.is_zero:
        return Subspace.full(U.ambient_dim)
    if U.is_full:
        return Subspace.zero(U.ambient_dim)
    return kernel_basis(U.basis.T, tol)


def _check_ambient(U: Subspace, V: Subspace) -> None:
    if U.ambient_dim != V.ambient_dim:
        raise DimensionMismatch(
            f"Subespaços em dimensões ambientes distintas: {U.ambient_dim} e {V.ambient_dim}"
        )


def subspace_sum(U: Subspace, V: Subspace, tol: TolerancePolicy) -> Subspace:
    _check_ambient(U, V)
    return span(np.hstack([U.basis, V.basis]), tol, U.ambient_dim)


def subspace_intersect(U: Subspace, V: Subspace, tol: TolerancePolicy) -> Subspace:
    """
    Interseção como núcleo dos projetores complementares empilhados.

    Um vetor está em U ∩ V quando (I - P_U)x = 0 e (I - P_V)x = 0; o núcleo é
    decidido com o limiar de ângulo principal √rank_rel.
    """
    _check_ambient(U, V)
    n = U.ambient_dim
    if U.is_zero or V.is_zero:
        return Subspace.zero(n)
    identity = np.eye(n)
    stacked = np.vstack([identity - U.projector(), identity - V.projector()])
    _, s, Vh = scipy.linalg.svd(stacked)
    nonzero = int(np.sum(s > tol.angle_tol))
    return Subspace(n, _canonical_columns(Vh[nonzero:].T))


def vectors_in(U: Subspace, M: np.ndarray, tol: TolerancePolicy) -> bool:
    """Verificar se todas as colunas de M pertencem a U (escala relativa a ‖M‖)."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return True
    M = M.reshape(U.ambient_dim, -1)
    scale = np.linalg.norm(M, 2)
    if scale <= tol.rank_abs:
        return True
    residual = M - U.basis @ (U.basis.T @ M)
    return bool(np.linalg.norm(residual, 2) <= tol.angle_tol * scale)


def subspace_contains(U: Subspace, V: Subspace, tol: TolerancePolicy) -> bool:
    """U contém V quando todo vetor da base de V está em U (ângulo principal)."""
    _check_ambient(U, V)
    if V.is_zero:
        return True
    if U.dim < V.dim:
        return False
    return vectors_in(U, V.basis, tol)


def subspace_distance(U: Subspace, V: Subspace) -> float:
    """Seno do maior ângulo principal; 1 quando as dimensões diferem."""
    _check_ambient(U, V)
    if U.dim != V.dim:
        return 1.0
    if U.is_zero:
        return 0.0
    angles = scipy.linalg.subspace_angles(U.basis, V.basis)
    return float(np.sin(np.max(angles)))


def subspace_equal(U: Subspace, V: Subspace, tol: TolerancePolicy) -> bool:
    return subspace_contains(U, V, tol) and subspace_contains(V, U, tol)


def min_eigenvalue(M) -> float:
    M = symmetrize(as_matrix(M))
    if M.size == 0:
        return 0.0
    return float(scipy.linalg.eigh(M, eigvals_only=True)[0])


def _reference_scale(eigenvalues: np.ndarray, scale: Optional[float]) -> float:
    own = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return own if scale is None else max(own, float(scale))


def _psd_threshold(eigenvalues: np.ndarray, tol: TolerancePolicy, scale: Optional[float] = None) -> float:
    return max(tol.psd_clip * _reference_scale(eigenvalues, scale), tol.rank_abs)


def is_psd(M, tol: TolerancePolicy, scale: Optional[float] = None) -> bool:
    """
    M ⪰ 0 a menos do corte psd_clip.

    ``scale`` é a norma da matriz de onde M foi derivada (complemento de Schur,
    Π_X); o corte usa o maior valor entre ela e o raio espectral de M.
    """
    M = symmetrize(as_matrix(M))
    if M.size == 0:
        return True
    eigenvalues = scipy.linalg.eigh(M, eigvals_only=True)
    return bool(eigenvalues[0] >= -_psd_threshold(eigenvalues, tol, scale))


def _psd_eigh(
    M, tol: TolerancePolicy, name: str, scale: Optional[float] = None
) -> Tuple[np.ndarray, np.ndarray]:
    M = require_symmetric(M, tol, name)
    eigenvalues, eigenvectors = scipy.linalg.eigh(M)
    if eigenvalues.size and eigenvalues[0] < -_psd_threshold(eigenvalues, tol, scale):
        raise NotPositiveSemidefinite(f"{name} não é semidefinida positiva", float(eigenvalues[0]))
    return np.clip(eigenvalues, 0.0, None), eigenvectors


def psd_factor(M, tol: TolerancePolicy, name: str = "M", scale: Optional[float] = None) -> np.ndarray:
    """
    Fator F com FᵀF = M e número de linhas igual ao posto de M.

    Autovalores em [-psd_clip·σ_max, 0) são cortados para zero; a ordem
    crescente do eigh é mantida. ``scale`` substitui σ_max quando maior.

    Raises:
        NotPositiveSemidefinite: Se M tiver autovalor abaixo do limiar
    """
    M = as_matrix(M, name)
    n = M.shape[0]
    if M.size == 0:
        return np.zeros((0, n))
    eigenvalues, eigenvectors = _psd_eigh(M, tol, name, scale)
    reference = _reference_scale(eigenvalues, scale)
    keep = eigenvalues > max(tol.rank_rel * n * reference, tol.rank_abs)
    factor = np.diag(np.sqrt(eigenvalues[keep])) @ eigenvectors[:, keep].T
    return _canonical_columns(factor.T).T


def psd_sqrt(M, tol: TolerancePolicy, name: str = "M") -> np.ndarray:
    """Raiz quadrada simétrica PSD de M."""
    M = as_matrix(M, name)
    if M.size == 0:
        return np.zeros_like(M)
    eigenvalues, eigenvectors = _psd_eigh(M, tol, name)
    return symmetrize(eigenvectors @ np.diag(np.sqrt(eigenvalues)) @ eigenvectors.T)


@dataclass(frozen=True)
class SchurFacts:
    """Fatos de blocos de uma matriz PSD particionada."""

    kernel_inclusion: bool
    range_identity: bool
    complement_psd: bool
    assembled_psd: bool


def _assemble(P11, P12, P22) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    P11 = as_matrix(P11, "P11")
    P12 = as_matrix(P12, "P12")
    P22 = as_matrix(P22, "P22")
    if P12.shape != (P11.shape[0], P22.shape[0]):
        raise DimensionMismatch(
            f"Blocos incompatíveis: P11 {P11.shape}, P12 {P12.shape}, P22 {P22.shape}"
        )
    return P11, P12, P22, np.block([[P11, P12], [P12.T, P22]])


def block_psd_report(P11, P12, P22, tol: TolerancePolicy) -> SchurFacts:
    """Avaliar separadamente os quatro fatos de blocos sem lançar exceção."""
    P11, P12, P22, P = _assemble(P11, P12, P22)
    P22_pinv = pinv(P22, tol)
    scale = 1.0 + np.linalg.norm(P)
    kernel_projector = np.eye(P22.shape[0]) - P22_pinv @ P22
    kernel_inclusion = np.linalg.norm(P12 @ kernel_projector) <= tol.angle_tol * scale
    range_identity = np.linalg.norm(P12 @ P22_pinv @ P22 - P12) <= tol.angle_tol * scale
    complement = symmetrize(P11 - P12 @ P22_pinv @ P12.T)
    reference = float(np.linalg.norm(P, 2)) if P.size else 0.0
    return SchurFacts(
        kernel_inclusion=bool(kernel_inclusion),
        range_identity=bool(range_identity),
        complement_psd=is_psd(complement, tol, scale=reference),
        assembled_psd=is_psd(P, tol),
    )


def schur_psd(P11, P12, P22, tol: TolerancePolicy) -> np.ndarray:
    """
    Complemento de Schur generalizado P11 - P12·P22†·P12ᵀ de uma matriz PSD.

    Raises:
        NotPositiveSemidefinite: Se a matriz montada for indefinida
        InvariantViolation: Se ker P22 ⊄ ker P12
    """
    P11, P12, P22, P = _assemble(P11, P12, P22)
    require_symmetric(P, tol, "P")
    minimum = min_eigenvalue(P)
    if not is_psd(P, tol):
        raise NotPositiveSemidefinite("Matriz particionada não é semidefinida positiva", minimum)
    facts = block_psd_report(P11, P12, P22, tol)
    if not (facts.kernel_inclusion and facts.range_identity):
        raise InvariantViolation("ker P22 não está contido em ker P12")
    return symmetrize(P11 - P12 @ pinv(P22, tol) @ P12.T)


def sorted_eigenvalues(M) -> np.ndarray:
    """Autovalores ordenados por parte real e depois imaginária."""
    M = as_matrix(M)
    if M.size == 0:
        return np.zeros(0, dtype=complex)
    eigenvalues = scipy.linalg.eigvals(M)
    eigenvalues = np.where(np.abs(eigenvalues.imag) <= 1e-12 * (1 + np.abs(eigenvalues)), eigenvalues.real, eigenvalues)
    return np.sort_complex(eigenvalues.astype(complex))


def multiset_close(first, second, atol: float) -> bool:
    """Comparar multiconjuntos de números complexos por emparelhamento guloso."""
    first = list(np.asarray(first, dtype=complex).reshape(-1))
    remaining = list(np.asarray(second, dtype=complex).reshape(-1))
    if len(first) != len(remaining):
        return False
    for value in first:
        distances = [abs(value - other) for other in remaining]
        best = int(np.argmin(distances))
        if distances[best] > atol * (1.0 + abs(value)):
            return False
        remaining.pop(best)
    return True
