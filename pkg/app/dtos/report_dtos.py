"""DTOs para relatórios."""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from app.config import settings
from app.entities.geometry_report import SolutionGeometry
from app.entities.solve_report import SolveReport
from app.entities.stabilization_result import StabilizationResult
from app.entities.stein_solution_set import SteinKernelReport, SteinSolutionSet
from app.entities.subspace import Subspace


Matrix = List[List[float]]
ComplexList = List[List[float]]


def matrix_to_list(M: np.ndarray) -> Matrix:
    return np.asarray(M, dtype=float).tolist()


def _finite_or_none(value: float) -> Optional[float]:
    return float(value) if np.isfinite(value) else None


def complex_to_list(values) -> ComplexList:
    """Complexos como pares [re, im]."""
    return [[float(np.real(v)), float(np.imag(v))] for v in np.asarray(values).reshape(-1)]


class SubspaceDTO(BaseModel):
    """Subespaço: dimensão e base ortonormal em colunas (linhas n x dim)."""

    dim: int = Field(..., ge=0, description="Dimensão do subespaço")
    basis: Matrix = Field(..., description="Base ortonormal, uma coluna por vetor")

    @classmethod
    def from_subspace(cls, subspace: Subspace) -> "SubspaceDTO":
        return cls(dim=subspace.dim, basis=matrix_to_list(subspace.basis))


class SolveSectionDTO(BaseModel):
    """Resultado do comando solve."""

    status: str
    iterations: int
    kernel_stationary_at: int
    kernel_dimensions: List[int]
    min_increment_eigenvalue: Optional[float] = None
    monotone: bool = True
    plateaus: int = 0
    classification: Optional[str] = None
    X_bar: Optional[Matrix] = None
    R_X: Optional[Matrix] = None
    G_X: Optional[Matrix] = None
    K_X: Optional[Matrix] = None
    A_X: Optional[Matrix] = None
    BG_X: Optional[Matrix] = None
    kernel_X: Optional[SubspaceDTO] = None
    v_star: Optional[SubspaceDTO] = None
    r0: Optional[SubspaceDTO] = None
    fixed_spectrum: Optional[ComplexList] = None
    optimal_cost: Optional[float] = None

    @classmethod
    def from_report(cls, report: SolveReport) -> "SolveSectionDTO":
        """Campos da iteração; os campos da solução são preenchidos pelo use case."""
        return cls(
            status=report.status.value,
            iterations=report.iterations,
            kernel_stationary_at=report.kernel_stationary_at,
            kernel_dimensions=list(report.kernel_dimensions),
            min_increment_eigenvalue=_finite_or_none(report.min_increment_eigenvalue),
            monotone=report.monotone,
            plateaus=report.plateaus,
            classification=report.classification.value if report.classification else None,
            X_bar=matrix_to_list(report.X_bar) if np.all(np.isfinite(report.X_bar)) else None,
        )


class CandidateDTO(BaseModel):
    """Verificação de uma candidata X."""

    index: int
    classification: str
    residual_norm: float
    kernel_condition: bool
    kernel_identity: bool
    kernel_R_X_in_kernel_R: bool
    rank_R_X: int
    output_nulling: bool
    friend: bool
    r0_in_kernel_C_X: bool
    x_r0_residual: float
    r_star_equals_r0: Optional[bool] = None
    friend_independent: Optional[bool] = None
    kernel_X: SubspaceDTO
    r0: SubspaceDTO
    v_star: SubspaceDTO

    @classmethod
    def from_geometry(
        cls, index: int, classification: str, residual_norm: float, kernel_condition: bool,
        rank_R_X: int, geometry: SolutionGeometry,
    ) -> "CandidateDTO":
        return cls(
            index=index,
            classification=classification,
            residual_norm=residual_norm,
            kernel_condition=kernel_condition,
            kernel_identity=geometry.kernel_identity,
            kernel_R_X_in_kernel_R=geometry.kernel_R_X_in_kernel_R,
            rank_R_X=rank_R_X,
            output_nulling=geometry.output_nulling,
            friend=geometry.friend,
            r0_in_kernel_C_X=geometry.r0_in_kernel_C_X,
            x_r0_residual=geometry.x_r0_residual,
            r_star_equals_r0=geometry.r_star_equals_r0,
            friend_independent=geometry.friend_independent,
            kernel_X=SubspaceDTO.from_subspace(geometry.kernel_X),
            r0=SubspaceDTO.from_subspace(geometry.r0),
            v_star=SubspaceDTO.from_subspace(geometry.v_star),
        )


class SteinKernelDTO(BaseModel):
    unmixed: bool
    kernel_invariant: bool
    kernel_in_kernel_Q: bool
    kernel_equals_unobservable: Optional[bool] = None
    kernel_X: SubspaceDTO
    unobservable: SubspaceDTO

    @classmethod
    def from_report(cls, report: SteinKernelReport) -> "SteinKernelDTO":
        return cls(
            unmixed=report.unmixed,
            kernel_invariant=report.kernel_invariant,
            kernel_in_kernel_Q=report.kernel_in_kernel_Q,
            kernel_equals_unobservable=report.kernel_equals_unobservable,
            kernel_X=SubspaceDTO.from_subspace(report.kernel_X),
            unobservable=SubspaceDTO.from_subspace(report.unobservable),
        )


class SteinSectionDTO(BaseModel):
    """Conjunto de soluções de X = AᵀXA + Q."""

    consistent: bool
    unique: bool
    family_dim: int
    residual: float
    unmixed: bool
    particular: Optional[Matrix] = None
    homogeneous_basis: List[Matrix] = Field(default_factory=list)
    member_kernel_dimensions: List[int] = Field(default_factory=list)
    kernel_report: Optional[SteinKernelDTO] = None

    @classmethod
    def from_solutions(cls, solutions: SteinSolutionSet, unmixed: bool) -> "SteinSectionDTO":
        return cls(
            consistent=solutions.is_consistent,
            unique=solutions.is_unique,
            family_dim=solutions.family_dim,
            residual=float(solutions.residual),
            unmixed=unmixed,
            particular=None if solutions.particular is None else matrix_to_list(solutions.particular),
            homogeneous_basis=[matrix_to_list(H) for H in solutions.homogeneous_basis],
        )


class SpectralSectionDTO(BaseModel):
    """Posto normal de Φ e resíduos das identidades espectrais."""

    samples: int
    seed: int
    normal_rank: int
    rank_R_X: Optional[int] = None
    classification: Optional[str] = None
    rank_holds: Optional[bool] = None
    max_phi_pix_residual: Optional[float] = None
    max_spectral_factor_residual: Optional[float] = None
    max_t_inverse_residual: Optional[float] = None
    max_reduced_phi_residual: Optional[float] = None


class StabilizeSectionDTO(BaseModel):
    """Alocação de polos em R₀ e invariância do custo."""

    r0_dim: int
    desired_poles: ComplexList
    placed_poles: ComplexList
    fixed_spectrum: ComplexList
    off_r0_spectrum: ComplexList
    fixed_poles_removed: bool
    closed_loop_radius: float
    L: Matrix
    A_cl: Matrix
    cost_residual: Optional[float] = None
    horizon: Optional[int] = None

    @classmethod
    def from_result(cls, result: StabilizationResult, r0_dim: int) -> "StabilizeSectionDTO":
        return cls(
            r0_dim=r0_dim,
            desired_poles=complex_to_list(result.desired_poles),
            placed_poles=complex_to_list(result.placed_poles),
            fixed_spectrum=complex_to_list(result.fixed_spectrum),
            off_r0_spectrum=complex_to_list(result.off_r0_spectrum),
            fixed_poles_removed=result.fixed_poles_removed,
            closed_loop_radius=result.closed_loop_radius,
            L=matrix_to_list(result.L),
            A_cl=matrix_to_list(result.A_cl),
        )


class ReportDTO(BaseModel):
    """Relatório versionado produzido por todos os comandos."""

    schema_version: str = Field(default=settings.report_schema_version, description="Versão do esquema")
    command: str = Field(..., description="Comando que gerou o relatório")
    n: int
    m: int
    tolerances: Dict[str, float] = Field(default_factory=dict)
    solve: Optional[SolveSectionDTO] = None
    candidates: Optional[List[CandidateDTO]] = None
    stein: Optional[SteinSectionDTO] = None
    spectral: Optional[SpectralSectionDTO] = None
    stabilize: Optional[StabilizeSectionDTO] = None
    checks: Dict[str, bool] = Field(default_factory=dict, description="Aprovação por invariante")

    @property
    def passed(self) -> bool:
        return all(self.checks.values())
