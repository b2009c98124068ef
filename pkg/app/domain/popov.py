"""Tripla de Popov, quantidades de X, resíduos e classificação de soluções."""

import logging
from typing import Optional

import numpy as np

from app.domain.exceptions import DimensionMismatch, FactorMismatch, NotPositiveSemidefinite
from app.domain.numerics import (
    as_matrix,
    is_psd,
    kernel_basis,
    pinv,
    psd_factor,
    rank_svd,
    require_symmetric,
    schur_psd,
    subspace_equal,
    subspace_intersect,
    symmetrize,
)
from app.entities.popov_triple import PopovTriple, SolutionClass, XQuantities
from app.entities.tolerance import TolerancePolicy


logger = logging.getLogger(__name__)

PI_NOT_PSD_MESSAGE = "Popov matrix not positive semidefinite"


def _check_shape(M: np.ndarray, shape: tuple, name: str) -> None:
    if M.shape != shape:
        raise DimensionMismatch(f"{name} deve ter dimensão {shape}, recebido {M.shape}")


def _blank(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols))


def _factor_of_pi(pi: np.ndarray, tol: TolerancePolicy) -> np.ndarray:
    try:
        return psd_factor(pi, tol, name="Π")
    except NotPositiveSemidefinite as e:
        raise NotPositiveSemidefinite(PI_NOT_PSD_MESSAGE, e.min_eigenvalue) from e


def validate_factor(Q, R, S, C, D, tol: TolerancePolicy) -> None:
    """
    Conferir Q = CᵀC, S = CᵀD e R = DᵀD.

    Raises:
        FactorMismatch: Se a fatoração não reproduzir Π
    """
    pi = np.block([[Q, S], [S.T, R]])
    CD = np.hstack([C, D])
    scale = 1.0 + np.linalg.norm(pi)
    if np.linalg.norm(CD.T @ CD - pi) > tol.angle_tol * scale:
        raise FactorMismatch("C e D fornecidos não satisfazem Q=CᵀC, S=CᵀD, R=DᵀD")


def validate_triple(
    A, B, Q, R, S, tol: TolerancePolicy, C=None, D=None
) -> PopovTriple:
    """
    Validar dimensões e Π ⪰ 0 e montar a tripla.

    Args:
        A, B, Q, R, S: Dados da tripla (B pode ter zero colunas)
        tol: Política de tolerâncias
        C, D: Fatoração opcional de Π, validada quando fornecida

    Returns:
        PopovTriple: Tripla validada

    Raises:
        DimensionMismatch: Dimensões inconsistentes
        NotSymmetric: Q ou R não simétricas
        NotPositiveSemidefinite: Π indefinida (carrega o menor autovalor)
    """
    A = as_matrix(A, "A")
    n = A.shape[0]
    _check_shape(A, (n, n), "A")
    B = as_matrix(B, "B") if B is not None else _blank(n, 0)
    if B.shape[0] != n and B.size == 0:
        B = _blank(n, 0)
    m = B.shape[1]
    _check_shape(B, (n, m), "B")
    Q = require_symmetric(Q, tol, "Q")
    _check_shape(Q, (n, n), "Q")
    R = require_symmetric(R, tol, "R") if m else _blank(0, 0)
    _check_shape(R, (m, m), "R")
    S = as_matrix(S, "S") if (S is not None and m) else _blank(n, m)
    _check_shape(S, (n, m), "S")

    factor = _factor_of_pi(np.block([[Q, S], [S.T, R]]), tol)
    if C is not None and D is not None:
        C = as_matrix(C, "C")
        D = as_matrix(D, "D") if m else _blank(C.shape[0], 0)
        _check_shape(C, (C.shape[0], n), "C")
        _check_shape(D, (C.shape[0], m), "D")
        validate_factor(Q, R, S, C, D, tol)
        supplied = True
    else:
        C, D = factor[:, :n], factor[:, n:]
        supplied = False

    logger.debug("Tripla validada: n=%d, m=%d, posto(Π)=%d", n, m, C.shape[0])
    return PopovTriple(A=A, B=B, Q=Q, R=R, S=S, C=C, D=D, factor_supplied=supplied)


def triple_from_quadruple(A, B, C, D, tol: TolerancePolicy) -> PopovTriple:
    """Tripla com Π = [C D]ᵀ[C D], preservando o fator fornecido."""
    C = as_matrix(C, "C")
    D = as_matrix(D, "D")
    if C.shape[0] != D.shape[0]:
        raise DimensionMismatch(f"C e D com números de linhas distintos: {C.shape}, {D.shape}")
    return validate_triple(A, B, C.T @ C, D.T @ D, C.T @ D, tol, C=C, D=D)


def _check_candidate(sigma: PopovTriple, X, tol: TolerancePolicy) -> np.ndarray:
    X = require_symmetric(X, tol, "X")
    _check_shape(X, (sigma.n, sigma.n), "X")
    return X


def x_quantities(sigma: PopovTriple, X, tol: TolerancePolicy) -> XQuantities:
    """
    Calcular Q_X, S_X, R_X, G_X, K_X, A_X, Π_X, Q0_X e C_X.

    Args:
        sigma: Tripla de Popov
        X: Candidata simétrica n x n
        tol: Política de tolerâncias

    Returns:
        XQuantities: Quantidades derivadas de X
    """
    X = _check_candidate(sigma, X, tol)
    A, B = sigma.A, sigma.B
    Q_X = symmetrize(sigma.Q + A.T @ X @ A - X)
    S_X = A.T @ X @ B + sigma.S
    R_X = symmetrize(sigma.R + B.T @ X @ B)
    R_X_pinv = pinv(R_X, tol)
    G_X = symmetrize(np.eye(sigma.m) - R_X_pinv @ R_X)
    K_X = R_X_pinv @ S_X.T
    A_X = A - B @ K_X
    Pi_X = np.block([[Q_X, S_X], [S_X.T, R_X]])
    reduction = np.vstack([np.eye(sigma.n), -K_X])
    Q0_X = symmetrize(reduction.T @ sigma.pi @ reduction)
    C_X = sigma.C - sigma.D @ K_X
    return XQuantities(
        X=X,
        Q_X=Q_X,
        S_X=S_X,
        R_X=R_X,
        R_X_pinv=R_X_pinv,
        G_X=G_X,
        K_X=K_X,
        A_X=A_X,
        Pi_X=Pi_X,
        Q0_X=Q0_X,
        C_X=C_X,
        rank_R_X=rank_svd(R_X, tol) if sigma.m else 0,
    )


def riccati_operator(
    sigma: PopovTriple, P, tol: TolerancePolicy, range_basis: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    Operador de Riccati AᵀPA - (AᵀPB+S)(R+BᵀPB)†(BᵀPA+Sᵀ) + Q.

    Com ``range_basis`` a pseudo-inversa é tomada sobre a imagem congelada de R_P.
    """
    P = as_matrix(P, "P")
    A, B = sigma.A, sigma.B
    S_P = A.T @ P @ B + sigma.S
    R_P = symmetrize(sigma.R + B.T @ P @ B)
    if range_basis is None:
        R_P_pinv = pinv(R_P, tol)
    elif range_basis.shape[1] == 0:
        R_P_pinv = np.zeros_like(R_P)
    else:
        reduced = range_basis.T @ R_P @ range_basis
        R_P_pinv = range_basis @ np.linalg.solve(reduced, range_basis.T)
    return symmetrize(A.T @ P @ A - S_P @ R_P_pinv @ S_P.T + sigma.Q)


def gdare_residual(sigma: PopovTriple, X, tol: TolerancePolicy) -> np.ndarray:
    """Resíduo 𝐑[X] - X da GDARE (simétrico)."""
    X = _check_candidate(sigma, X, tol)
    return symmetrize(riccati_operator(sigma, X, tol) - X)


def residual_is_zero(residual: np.ndarray, X: np.ndarray, tol: TolerancePolicy) -> bool:
    return bool(np.linalg.norm(residual) <= tol.conv_rel * (1.0 + np.linalg.norm(X)))


def kernel_condition_holds(sigma: PopovTriple, X, tol: TolerancePolicy) -> bool:
    """Condição de núcleo ker R_X ⊆ ker S_X, na forma S_X·G_X = 0."""
    q = x_quantities(sigma, X, tol)
    return _kernel_condition(q, tol)


def _kernel_condition(q: XQuantities, tol: TolerancePolicy) -> bool:
    if q.G_X.size == 0:
        return True
    return bool(
        np.linalg.norm(q.S_X @ q.G_X) <= tol.condition_tol * (1.0 + np.linalg.norm(q.S_X))
    )


def pi_x_scale(sigma: PopovTriple, X: np.ndarray) -> float:
    """Escala de referência de Π_X: ‖Π‖ + ‖X‖·(1 + ‖[A B]‖²)."""
    AB = np.hstack([sigma.A, sigma.B])
    return float(np.linalg.norm(sigma.pi, 2) + np.linalg.norm(X, 2) * (1.0 + np.linalg.norm(AB, 2) ** 2))


def drlmi_holds(sigma: PopovTriple, X, tol: TolerancePolicy) -> bool:
    """Π_X ⪰ 0 (desigualdade matricial linear de Riccati)."""
    q = x_quantities(sigma, X, tol)
    return is_psd(q.Pi_X, tol, scale=pi_x_scale(sigma, q.X))


def lx(sigma: PopovTriple, X, tol: TolerancePolicy) -> np.ndarray:
    """L(X) = Π_X - Π, linear em X."""
    return x_quantities(sigma, X, tol).Pi_X - sigma.pi


def classify_solution(sigma: PopovTriple, X, tol: TolerancePolicy) -> SolutionClass:
    """
    Classificar X como DARE, CGDARE, GDARE_ONLY, DRLMI_ONLY ou NONE.

    Args:
        sigma: Tripla de Popov
        X: Candidata simétrica
        tol: Política de tolerâncias

    Returns:
        SolutionClass: Classe da candidata
    """
    q = x_quantities(sigma, X, tol)
    residual = gdare_residual(sigma, q.X, tol)
    if residual_is_zero(residual, q.X, tol):
        if q.rank_R_X == sigma.m:
            return SolutionClass.DARE
        if _kernel_condition(q, tol):
            return SolutionClass.CGDARE
        return SolutionClass.GDARE_ONLY
    if is_psd(q.Pi_X, tol, scale=pi_x_scale(sigma, q.X)):
        return SolutionClass.DRLMI_ONLY
    return SolutionClass.NONE


def riccati_inequality(sigma: PopovTriple, X, tol: TolerancePolicy) -> np.ndarray:
    """
    Matriz de dissipação reduzida Q_X - S_X·R_X†·S_Xᵀ, PSD para membros da DRLMI.

    Raises:
        NotPositiveSemidefinite: Se Π_X não for PSD
    """
    q = x_quantities(sigma, X, tol)
    return schur_psd(q.Q_X, q.S_X, q.R_X, tol)


def kernel_identity_holds(sigma: PopovTriple, X, tol: TolerancePolicy) -> bool:
    """ker R_X = ker(XB) ∩ ker R."""
    q = x_quantities(sigma, X, tol)
    if sigma.m == 0:
        return True
    left = kernel_basis(q.R_X, tol)
    right = subspace_intersect(kernel_basis(q.X @ sigma.B, tol), kernel_basis(sigma.R, tol), tol)
    return subspace_equal(left, right, tol)
