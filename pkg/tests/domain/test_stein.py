import numpy as np
import pytest
import scipy.linalg

from app.domain.exceptions import (
    NotPositiveSemidefinite,
    PreconditionViolated,
    SteinInconsistent,
    SteinResidualTooLarge,
)
from app.domain.numerics import kernel_basis
from app.domain.stein import (
    family_kernel_dimensions,
    is_unmixed,
    smat,
    stein_kernel_report,
    stein_operator_matrix,
    stein_residual,
    stein_solve,
    svec,
    unobservable_containment_check,
)
from tests.factories import random_orthogonal, random_psd, random_stable, random_symmetric


def test_unique_solution_of_diagonal_equation(tol) -> None:
    A = np.diag([0.5, 1.0 / 3.0])
    solutions = stein_solve(A, np.eye(2), tol)
    assert solutions.is_unique
    assert np.allclose(solutions.particular, np.diag([4.0 / 3.0, 9.0 / 8.0]))


def test_stable_equation_matches_scipy(rng, tol) -> None:
    for _ in range(10):
        A = random_stable(rng, 4)
        Q = random_psd(rng, 4)
        solutions = stein_solve(A, Q, tol)
        expected = scipy.linalg.solve_discrete_lyapunov(A.T, Q)
        assert solutions.is_unique
        assert np.allclose(solutions.particular, expected, atol=1e-8 * (1.0 + np.linalg.norm(expected)))
        assert stein_residual(A, Q, solutions.particular) < 1e-8 * (1.0 + np.linalg.norm(Q))


def test_family_of_solutions(tol) -> None:
    A = np.array([[1.0, 0.0], [1.0, 1.0]])
    Q = np.diag([1.0, 0.0])
    solutions = stein_solve(A, Q, tol)
    assert solutions.is_consistent
    assert not solutions.is_unique
    assert solutions.family_dim == 1
    assert np.allclose(solutions.particular, [[0.0, -0.5], [-0.5, 0.0]])
    assert np.allclose(solutions.homogeneous_basis[0], [[1.0, 0.0], [0.0, 0.0]])
    for alpha in (-3.0, 0.7, 12.0):
        assert stein_residual(A, Q, solutions.member([alpha])) < 1e-10
    assert family_kernel_dimensions(solutions, [[-3.0], [0.0], [5.0]], tol) == [0, 0, 0]


def test_member_requires_one_coefficient_per_direction(tol) -> None:
    solutions = stein_solve([[1.0, 0.0], [1.0, 1.0]], np.diag([1.0, 0.0]), tol)
    with pytest.raises(ValueError):
        solutions.member([1.0, 2.0])


def test_inconsistent_equation(tol) -> None:
    solutions = stein_solve(np.eye(2), np.eye(2), tol)
    assert not solutions.is_consistent
    assert solutions.residual > 0.1
    with pytest.raises(SteinInconsistent):
        solutions.require_particular()


def test_operator_matrix_of_zero_map_is_identity() -> None:
    assert np.allclose(stein_operator_matrix(np.zeros((2, 2))), np.eye(3))


def test_svec_is_an_isometry(rng) -> None:
    M = random_symmetric(rng, 4)
    assert np.linalg.norm(svec(M)) == pytest.approx(np.linalg.norm(M))
    assert np.allclose(smat(svec(M), 4), M)


def test_unmixed_detection(tol) -> None:
    assert is_unmixed(np.diag([0.5, 1.0 / 3.0]), tol)
    assert not is_unmixed(np.diag([0.5, 2.0]), tol)
    assert not is_unmixed(np.eye(2), tol)


def test_kernel_equals_unobservable_for_unmixed_matrix(tol) -> None:
    A = np.diag([0.5, 1.0 / 3.0])
    Q = np.diag([1.0, 0.0])
    X = stein_solve(A, Q, tol).particular
    assert np.allclose(X, np.diag([4.0 / 3.0, 0.0]))
    report = stein_kernel_report(A, Q, X, tol)
    assert report.kernel_X.dim == 1
    assert report.unmixed
    assert report.kernel_invariant
    assert report.kernel_in_kernel_Q
    assert report.kernel_equals_unobservable
    assert report.passed


def test_kernel_report_on_random_unmixed_problems(rng, tol) -> None:
    for _ in range(10):
        A = random_stable(rng, 4)
        Q = random_psd(rng, 4, rank=2)
        X = stein_solve(A, Q, tol).particular
        report = stein_kernel_report(A, Q, X, tol)
        assert report.passed
        assert report.kernel_X.dim == report.unobservable.dim


def test_kernel_report_rejects_non_solution(tol) -> None:
    with pytest.raises(SteinResidualTooLarge):
        stein_kernel_report(np.diag([0.5, 0.5]), np.eye(2), np.eye(2), tol)


def test_kernel_report_requires_psd_weight(tol) -> None:
    A = np.diag([0.5, 0.5])
    Q = np.diag([1.0, -1.0])
    X = stein_solve(A, Q, tol).particular
    with pytest.raises(NotPositiveSemidefinite):
        stein_kernel_report(A, Q, X, tol)


class TestUnobservableContainment:
    A = np.array([[2.0, 0.0], [1.0, 3.0]])
    B = np.array([[0.0], [1.0]])
    F = np.array([[0.5]])

    def test_holds_when_precondition_holds(self, tol) -> None:
        assert unobservable_containment_check(self.A, self.B, self.F, [[1.0], [0.0]], tol)

    def test_zero_matrix_is_trivially_contained(self, tol) -> None:
        assert unobservable_containment_check(self.A, self.B, self.F, np.zeros((2, 1)), tol)

    def test_precondition_violation(self, tol) -> None:
        with pytest.raises(PreconditionViolated):
            unobservable_containment_check(self.A, self.B, self.F, [[0.0], [1.0]], tol)


def _hypothesis_solutions(A, B, F, tol) -> list:
    """Todas as X com [Aᵀ; Bᵀ]·X·F = [X; 0], por força bruta sobre vec(X)."""
    n, q = A.shape[0], F.shape[0]
    operator = np.vstack([np.kron(F.T, A.T) - np.eye(n * q), np.kron(F.T, B.T)])
    basis = kernel_basis(operator, tol).basis
    return [basis[:, k].reshape((n, q), order="F") for k in range(basis.shape[1])]


class TestUnobservableContainmentFamilies:
    def test_nilpotent_f_forces_trivial_solutions(self, rng, tol) -> None:
        for _ in range(20):
            A = rng.standard_normal((3, 3))
            B = rng.standard_normal((3, 1))
            F = np.triu(rng.standard_normal((2, 2)), k=1)
            assert _hypothesis_solutions(A, B, F, tol) == []
            assert unobservable_containment_check(A, B, F, np.zeros((3, 2)), tol)

    def test_reachable_block_annihilates_coupling(self, rng, tol) -> None:
        for _ in range(20):
            A11 = random_stable(rng, 2, radius=1.5)
            B21 = rng.standard_normal((2, 1))
            A22 = rng.standard_normal((2, 2))
            assert _hypothesis_solutions(A11.T, B21, A22, tol) == []
            assert unobservable_containment_check(A11.T, B21, A22, np.zeros((2, 2)), tol)

    def test_unobservable_directions_satisfy_hypothesis(self, rng, tol) -> None:
        for _ in range(20):
            n, k = 4, 2
            At = np.zeros((n, n))
            At[:k, :] = rng.standard_normal((k, n))
            At[k:, k:] = rng.standard_normal((n - k, n - k))
            Bt = np.hstack([np.zeros((1, k)), rng.standard_normal((1, n - k))])
            Y = rng.standard_normal((k, k))
            F = np.linalg.solve(Y, np.linalg.solve(At[:k, :k], Y))
            X = np.vstack([Y, np.zeros((n - k, k))])
            U = random_orthogonal(rng, n)
            A, B = U @ At.T @ U.T, U @ Bt.T
            assert unobservable_containment_check(A, B, F, U @ X, tol)
            assert np.allclose(B.T @ U @ X, 0.0, atol=1e-10)

    def test_hypothesis_met_only_to_tolerance_can_fail(self, tol) -> None:
        assert not unobservable_containment_check([[1e6]], [[1.0]], [[1e-6]], [[1.0]], tol)
