import numpy as np
import pytest

from app.domain.exceptions import NotAFriend, NotInvariant, NotOutputNulling
from app.domain.geometry import (
    compare_solutions,
    controllability_form,
    input_space_split,
    is_friend,
    is_output_nulling,
    largest_output_nulling,
    output_nulling_dimensions,
    quadruple_from_triple,
    quotient_spectrum,
    r0,
    reachability_on,
    reachable_subspace,
    restriction,
    smallest_invariant_containing,
    solution_geometry,
    unobservable_subspace,
)
from app.domain.numerics import span, subspace_equal
from app.domain.popov import triple_from_quadruple
from app.domain.riccati import solve_min_psd
from app.entities.quadruple import Quadruple
from app.entities.subspace import Subspace
from tests.factories import random_stable, rotated_example_blocks


E1 = np.array([[1.0], [0.0]])
E2 = np.array([[0.0], [1.0]])


class TestReachability:
    def test_chain_is_fully_reachable(self, tol) -> None:
        assert reachable_subspace([[0.0, 1.0], [0.0, 0.0]], [[0.0], [1.0]], tol).is_full

    def test_input_on_nilpotent_tail(self, tol) -> None:
        reachable = reachable_subspace([[0.0, 1.0], [0.0, 0.0]], [[1.0], [0.0]], tol)
        assert subspace_equal(reachable, span(E1, tol), tol)

    def test_unobservable_mode(self, tol) -> None:
        unobservable = unobservable_subspace(np.diag([1.0, 2.0]), [[1.0, 0.0]], tol)
        assert subspace_equal(unobservable, span(E2, tol), tol)

    def test_controllability_form_decouples_unreachable_part(self, rng, tol) -> None:
        A = np.zeros((4, 4))
        A[:2, :2] = rng.standard_normal((2, 2))
        A[:2, 2:] = rng.standard_normal((2, 2))
        A[2:, 2:] = rng.standard_normal((2, 2))
        B = np.vstack([rng.standard_normal((2, 1)), np.zeros((2, 1))])
        Q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        form = controllability_form(Q @ A @ Q.T, Q @ B, tol)
        assert form.reachable_dim == 2
        assert form.block_sizes == (2, 2)
        assert np.allclose(form.A21, 0.0, atol=1e-8)
        assert np.allclose(form.B2, 0.0, atol=1e-8)

    def test_smallest_invariant_subspace(self, tol) -> None:
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert smallest_invariant_containing(A, span(E2, tol), tol).is_full
        assert smallest_invariant_containing(A, span(E1, tol), tol).dim == 1


class TestOutputNulling:
    def test_example_v_star(self, example_triple, tol) -> None:
        quad = quadruple_from_triple(example_triple)
        v_star = largest_output_nulling(quad, tol)
        assert subspace_equal(v_star, span(E1, tol), tol)
        assert output_nulling_dimensions(quad, tol) == [2, 1, 1]

    def test_invertible_feedthrough_makes_everything_output_nulling(self, rng, tol) -> None:
        for _ in range(5):
            A = rng.standard_normal((3, 3))
            B = rng.standard_normal((3, 2))
            C = rng.standard_normal((2, 3))
            D = rng.standard_normal((2, 2))
            quad = Quadruple(A=A, B=B, C=C, D=D)
            assert largest_output_nulling(quad, tol).is_full
            assert is_friend(quad, Subspace.full(3), np.linalg.solve(D, C), tol)

    def test_whole_space_is_not_output_nulling_on_example(self, example_triple, tol) -> None:
        quad = quadruple_from_triple(example_triple)
        assert not is_output_nulling(quad, Subspace.full(2), tol)
        with pytest.raises(NotOutputNulling):
            reachability_on(quad, Subspace.full(2), np.zeros((2, 2)), tol)

    def test_rejects_non_friend(self, example_triple, tol) -> None:
        quad = quadruple_from_triple(example_triple)
        with pytest.raises(NotAFriend):
            reachability_on(quad, span(E1, tol), [[0.0, 0.0], [1.0, 0.0]], tol)

    def test_reachability_on_kernel_matches_r0(self, example_triple, example_solution, tol) -> None:
        quad = quadruple_from_triple(example_triple)
        r_star = reachability_on(quad, span(E1, tol), [[0.0, 0.5], [0.0, 0.5]], tol)
        assert subspace_equal(r_star, r0(example_triple, example_solution, tol), tol)


class TestSolutionGeometry:
    def test_example(self, example_triple, example_solution, tol) -> None:
        geometry = solution_geometry(example_triple, example_solution, tol)
        assert geometry.kernel_X.dim == 1
        assert subspace_equal(geometry.r0, span(E1, tol), tol)
        assert geometry.v_star.dim == 1
        assert geometry.kernel_identity
        assert geometry.kernel_R_X_in_kernel_R
        assert geometry.r0_in_kernel_C_X
        assert geometry.x_r0_residual == pytest.approx(0.0, abs=1e-12)
        assert geometry.output_nulling
        assert geometry.friend
        assert geometry.r_star_equals_r0
        assert geometry.friend_independent

    def test_gdare_only_candidate_breaks_kernel_identity(self, gdare_only_triple, gdare_only_candidate, tol) -> None:
        assert not solution_geometry(gdare_only_triple, gdare_only_candidate, tol).kernel_identity

    def test_minimal_solutions_of_random_problems(self, rng, tol) -> None:
        for _ in range(10):
            D = rng.standard_normal((2, 2))
            D[:, 1] = 0.0
            sigma = triple_from_quadruple(
                random_stable(rng, 3), rng.standard_normal((3, 2)), rng.standard_normal((2, 3)), D, tol
            )
            geometry = solution_geometry(sigma, solve_min_psd(sigma, tol).X_bar, tol)
            assert geometry.kernel_identity
            assert geometry.kernel_R_X_in_kernel_R
            assert geometry.r0_in_kernel_C_X
            assert geometry.output_nulling
            assert geometry.friend
            assert geometry.r_star_equals_r0
            assert geometry.x_r0_residual < 1e-8

    def test_rotated_example_blocks(self, rng, tol) -> None:
        for copies in (1, 2, 3, 2, 3, 2):
            sigma, X_bar, free = rotated_example_blocks(rng, tol, copies)
            report = solve_min_psd(sigma, tol)
            assert report.converged
            assert np.allclose(report.X_bar, X_bar, atol=1e-8)
            geometry = solution_geometry(sigma, report.X_bar, tol)
            assert geometry.r0.dim == copies
            assert subspace_equal(geometry.r0, free, tol)
            assert geometry.kernel_X.dim == copies
            assert geometry.kernel_R_X.dim == copies
            assert geometry.r_star_equals_r0
            assert geometry.r0_in_kernel_C_X
            assert geometry.x_r0_residual < 1e-8
            assert geometry.kernel_identity
            assert geometry.output_nulling
            assert geometry.friend

    def test_two_solutions_share_fixed_data(self, two_solution_triple, tol) -> None:
        X_bar = solve_min_psd(two_solution_triple, tol).X_bar
        assert np.allclose(X_bar, np.diag([0.0, 1.0, 0.0]), atol=1e-9)
        comparison = compare_solutions(two_solution_triple, X_bar, np.diag([0.0, 1.0, 3.0]), tol)
        assert comparison.same_kernel_R
        assert comparison.same_r0
        assert comparison.same_fixed_spectrum
        assert comparison.consistent
        assert np.allclose(comparison.spectrum_X, [1.0])


def test_restriction_and_quotient(tol) -> None:
    A_X = np.diag([1.0, 0.0])
    assert np.allclose(restriction(A_X, span(E1, tol), tol), [[1.0]])
    assert np.allclose(quotient_spectrum(A_X, span(E1, tol), tol), [0.0])
    with pytest.raises(NotInvariant):
        restriction([[0.0, 1.0], [1.0, 0.0]], span(E1, tol), tol)


def test_input_space_split_is_orthogonal(example_triple, example_solution, tol) -> None:
    split = input_space_split(example_triple, example_solution, tol)
    assert split.T1.shape == (2, 1)
    assert split.T2.shape == (2, 1)
    assert abs(float(split.T1[:, 0] @ split.T2[:, 0])) < 1e-12
    assert np.allclose(np.abs(split.T2[:, 0]), [1.0 / np.sqrt(2.0)] * 2)
