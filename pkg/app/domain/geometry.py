"""Subespaços de controle geométrico: alcançável, não observável, V*, R*_V e R₀."""

import logging
from typing import List, Optional, Tuple

import numpy as np

from app.domain.exceptions import DimensionMismatch, NotAFriend, NotInvariant, NotOutputNulling
from app.domain.numerics import (
    as_matrix,
    image_basis,
    kernel_basis,
    multiset_close,
    orthogonal_complement,
    sorted_eigenvalues,
    span,
    subspace_contains,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
    vectors_in,
)
from app.domain.popov import kernel_identity_holds, x_quantities
from app.entities.geometry_report import InputSplit, SolutionComparison, SolutionGeometry
from app.entities.popov_triple import PopovTriple
from app.entities.quadruple import KalmanForm, Quadruple
from app.entities.subspace import Subspace
from app.entities.tolerance import TolerancePolicy


logger = logging.getLogger(__name__)

SPECTRUM_ATOL = 1e-6


def quadruple_from_triple(sigma: PopovTriple) -> Quadruple:
    return Quadruple(A=sigma.A, B=sigma.B, C=sigma.C, D=sigma.D)


def reachable_subspace(A, B, tol: TolerancePolicy) -> Subspace:
    """im [B, AB, ..., A^{n-1}B] por crescimento iterativo da imagem."""
    A = as_matrix(A, "A")
    n = A.shape[0]
    B = np.asarray(B, dtype=float).reshape(n, -1)
    current = span(B, tol, n)
    for _ in range(n):
        if current.is_zero or current.is_full:
            break
        grown = subspace_sum(current, span(A @ current.basis, tol, n), tol)
        if grown.dim == current.dim:
            break
        current = grown
    return current


def unobservable_subspace(A, C, tol: TolerancePolicy) -> Subspace:
    """Núcleo da matriz de observabilidade, complemento de reachable(Aᵀ, Cᵀ)."""
    A = as_matrix(A, "A")
    C = np.asarray(C, dtype=float).reshape(-1, A.shape[0])
    return orthogonal_complement(reachable_subspace(A.T, C.T, tol), tol)


def controllability_form(A, B, tol: TolerancePolicy) -> KalmanForm:
    """
    Forma de Kalman de controlabilidade por mudança de base ortogonal.

    Args:
        A: Matriz n x n
        B: Matriz n x m
        tol: Política de tolerâncias

    Returns:
        KalmanForm: Base T cujas primeiras colunas geram o subespaço alcançável
    """
    A = as_matrix(A, "A")
    n = A.shape[0]
    B = np.asarray(B, dtype=float).reshape(n, -1)
    reachable = reachable_subspace(A, B, tol)
    complement = orthogonal_complement(reachable, tol)
    T = np.hstack([reachable.basis, complement.basis])
    k = reachable.dim
    At = T.T @ A @ T
    Bt = T.T @ B
    return KalmanForm(
        T=T,
        reachable_dim=k,
        A11=At[:k, :k],
        A12=At[:k, k:],
        A21=At[k:, :k],
        A22=At[k:, k:],
        B1=Bt[:k],
        B2=Bt[k:],
    )


def _embed(V: Subspace, extra: int) -> Subspace:
    """V ⊕ 0_extra."""
    return Subspace(V.ambient_dim + extra, np.vstack([V.basis, np.zeros((extra, V.dim))]))


def _check_quadruple_space(quad: Quadruple, V: Subspace) -> None:
    if V.ambient_dim != quad.n:
        raise DimensionMismatch(f"Subespaço em R^{V.ambient_dim}, esperado R^{quad.n}")


def _output_nulling_target(quad: Quadruple, V: Subspace, tol: TolerancePolicy) -> Subspace:
    feedthrough = image_basis(np.vstack([quad.B, quad.D]), tol)
    return subspace_sum(_embed(V, quad.p), feedthrough, tol)


def is_output_nulling(quad: Quadruple, V: Subspace, tol: TolerancePolicy) -> bool:
    """[A; C]·V ⊆ (V ⊕ 0_p) + im [B; D]."""
    _check_quadruple_space(quad, V)
    if V.is_zero:
        return True
    image = np.vstack([quad.A, quad.C]) @ V.basis
    return vectors_in(_output_nulling_target(quad, V, tol), image, tol)


def is_friend(quad: Quadruple, V: Subspace, F, tol: TolerancePolicy) -> bool:
    """(A - BF)·V ⊆ V e (C - DF)·V = 0."""
    _check_quadruple_space(quad, V)
    F = np.asarray(F, dtype=float).reshape(quad.m, quad.n)
    if V.is_zero:
        return True
    invariant = vectors_in(V, (quad.A - quad.B @ F) @ V.basis, tol)
    scale = 1.0 + np.linalg.norm(np.hstack([quad.C, quad.D @ F]))
    nulled = np.linalg.norm((quad.C - quad.D @ F) @ V.basis) <= tol.angle_tol * scale
    return bool(invariant and nulled)


def _output_nulling_recursion(quad: Quadruple, tol: TolerancePolicy) -> Tuple[Subspace, List[int]]:
    current = Subspace.full(quad.n)
    dims = [current.dim]
    stacked = np.vstack([quad.A, quad.C])
    for _ in range(quad.n + 1):
        target = _output_nulling_target(quad, current, tol)
        residual_map = stacked - target.basis @ (target.basis.T @ stacked)
        preimage = kernel_basis(residual_map, tol)
        following = subspace_intersect(current, preimage, tol)
        dims.append(following.dim)
        if following.dim == current.dim:
            break
        current = following
    return current, dims


def largest_output_nulling(quad: Quadruple, tol: TolerancePolicy) -> Subspace:
    """
    V* pela recursão V₀ = R^n, V_{k+1} = V_k ∩ {x : [A; C]x ∈ (V_k ⊕ 0) + im [B; D]}.
    """
    V_star, dims = _output_nulling_recursion(quad, tol)
    logger.debug("Recursão de V*: dimensões %s", dims)
    return V_star


def output_nulling_dimensions(quad: Quadruple, tol: TolerancePolicy) -> List[int]:
    return _output_nulling_recursion(quad, tol)[1]


def smallest_invariant_containing(A, W: Subspace, tol: TolerancePolicy) -> Subspace:
    """Menor subespaço A-invariante contendo W: W + AW + ... até estacionar."""
    return reachable_subspace(A, W.basis, tol)


def reachability_on(quad: Quadruple, V: Subspace, F, tol: TolerancePolicy) -> Subspace:
    """
    R*_V: menor subespaço (A - BF)-invariante contendo V ∩ B·ker D.

    Raises:
        NotOutputNulling: Se V não for de anulação de saída
        NotAFriend: Se F não for amigo de V
    """
    if not is_output_nulling(quad, V, tol):
        raise NotOutputNulling("V não é subespaço de anulação de saída")
    if not is_friend(quad, V, F, tol):
        raise NotAFriend("F não é amigo de V")
    F = np.asarray(F, dtype=float).reshape(quad.m, quad.n)
    kernel_D = kernel_basis(quad.D, tol) if quad.p else Subspace.full(quad.m)
    directions = span(quad.B @ kernel_D.basis, tol, quad.n)
    generator = subspace_intersect(V, directions, tol)
    return smallest_invariant_containing(quad.A - quad.B @ F, generator, tol)


def r0(sigma: PopovTriple, X, tol: TolerancePolicy) -> Subspace:
    """R₀ = subespaço alcançável do par (A_X, B·G_X)."""
    q = x_quantities(sigma, X, tol)
    return reachable_subspace(q.A_X, sigma.B @ q.G_X, tol)


def restriction(A, V: Subspace, tol: TolerancePolicy) -> np.ndarray:
    """
    Matriz k x k de A restrita a V na base de V.

    Raises:
        NotInvariant: Se A·V ⊄ V
    """
    A = as_matrix(A, "A")
    if not vectors_in(V, A @ V.basis, tol):
        raise NotInvariant("Subespaço não é invariante")
    return V.basis.T @ A @ V.basis


def quotient_spectrum(A, V: Subspace, tol: TolerancePolicy) -> np.ndarray:
    """Espectro do mapa induzido por A em R^n / V (V invariante)."""
    A = as_matrix(A, "A")
    complement = orthogonal_complement(V, tol)
    return sorted_eigenvalues(complement.basis.T @ A @ complement.basis)


def input_space_split(sigma: PopovTriple, X, tol: TolerancePolicy) -> InputSplit:
    """Base ortogonal do espaço de entradas separando im R_X e ker R_X."""
    q = x_quantities(sigma, X, tol)
    T1 = image_basis(q.R_X, tol).basis if sigma.m else np.zeros((0, 0))
    T2 = kernel_basis(q.R_X, tol).basis if sigma.m else np.zeros((0, 0))
    return InputSplit(T1=T1, T2=T2, B1=sigma.B @ T1, B2=sigma.B @ T2)


def solution_geometry(
    sigma: PopovTriple, X, tol: TolerancePolicy, rng: Optional[np.random.Generator] = None
) -> SolutionGeometry:
    """
    Resumo geométrico de uma candidata: ker X, R₀, V*, R*_{ker X} e as
    inclusões associadas.

    A independência de R*_{ker X} em relação ao amigo é testada com um
    segundo amigo K_X - G_X·L, L aleatório.
    """
    q = x_quantities(sigma, X, tol)
    quad = quadruple_from_triple(sigma)
    kernel_X = kernel_basis(q.X, tol)
    kernel_R_X = kernel_basis(q.R_X, tol) if sigma.m else Subspace.zero(0)
    kernel_R = kernel_basis(sigma.R, tol) if sigma.m else Subspace.zero(0)
    free = r0(sigma, q.X, tol)
    v_star = largest_output_nulling(quad, tol)

    output_nulling = is_output_nulling(quad, kernel_X, tol)
    friend = is_friend(quad, kernel_X, q.K_X, tol)
    r_star = None
    r_star_equals_r0 = None
    friend_independent = None
    if output_nulling and friend:
        r_star = reachability_on(quad, kernel_X, q.K_X, tol)
        r_star_equals_r0 = subspace_equal(r_star, free, tol)
        rng = rng or np.random.default_rng(0)
        other = q.K_X - q.G_X @ rng.standard_normal((sigma.m, sigma.n))
        if is_friend(quad, kernel_X, other, tol):
            friend_independent = subspace_equal(reachability_on(quad, kernel_X, other, tol), r_star, tol)
            if not friend_independent:
                logger.warning("R*_{ker X} mudou com o segundo amigo")

    kernel_C_X = kernel_basis(q.C_X, tol) if q.C_X.shape[0] else Subspace.full(sigma.n)
    return SolutionGeometry(
        kernel_X=kernel_X,
        kernel_R_X=kernel_R_X,
        r0=free,
        v_star=v_star,
        r_star=r_star,
        kernel_identity=kernel_identity_holds(sigma, q.X, tol),
        kernel_R_X_in_kernel_R=subspace_contains(kernel_R, kernel_R_X, tol),
        r0_in_kernel_C_X=subspace_contains(kernel_C_X, free, tol),
        x_r0_residual=float(np.linalg.norm(q.X @ free.basis)) if free.dim else 0.0,
        output_nulling=output_nulling,
        friend=friend,
        r_star_equals_r0=r_star_equals_r0,
        friend_independent=friend_independent,
    )


def compare_solutions(sigma: PopovTriple, X, Y, tol: TolerancePolicy) -> SolutionComparison:
    """Comparar ker R, R₀ e o espectro fixo de duas soluções da CGDARE."""
    qx = x_quantities(sigma, X, tol)
    qy = x_quantities(sigma, Y, tol)
    r0_x = r0(sigma, qx.X, tol)
    r0_y = r0(sigma, qy.X, tol)
    spectrum_x = sorted_eigenvalues(restriction(qx.A_X, r0_x, tol))
    spectrum_y = sorted_eigenvalues(restriction(qy.A_X, r0_y, tol))
    if sigma.m:
        same_kernel = subspace_equal(kernel_basis(qx.R_X, tol), kernel_basis(qy.R_X, tol), tol)
    else:
        same_kernel = True
    return SolutionComparison(
        same_kernel_R=same_kernel,
        same_r0=subspace_equal(r0_x, r0_y, tol),
        same_fixed_spectrum=multiset_close(spectrum_x, spectrum_y, SPECTRUM_ATOL),
        rank_R_X=qx.rank_R_X,
        rank_R_Y=qy.rank_R_X,
        spectrum_X=spectrum_x,
        spectrum_Y=spectrum_y,
    )
