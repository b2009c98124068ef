import numpy as np
import pytest

from app.domain.exceptions import ConjugationViolation, DesiredSetSizeMismatch, DivergentTrajectory
from app.domain.numerics import multiset_close, sorted_eigenvalues
from app.domain.popov import x_quantities
from app.domain.riccati import optimal_cost, simulate_trajectory
from app.domain.stabilize import (
    auto_horizon,
    cost_invariance_residual,
    fixed_spectrum,
    off_r0_spectrum,
    place_on_pair,
    place_on_r0,
)
from tests.factories import rotated_example_blocks


def test_spectra_of_example(example_triple, example_solution, tol) -> None:
    assert np.allclose(fixed_spectrum(example_triple, example_solution, tol), [1.0])
    assert np.allclose(off_r0_spectrum(example_triple, example_solution, tol), [0.0])


def test_place_fixed_pole_at_origin(example_triple, example_solution, tol) -> None:
    result = place_on_r0(example_triple, example_solution, [0.0], tol)
    assert np.allclose(result.L, [[-0.5, 0.0], [0.5, 0.0]])
    assert np.allclose(result.A_cl, np.zeros((2, 2)))
    assert np.allclose(result.placed_poles, [0.0])
    assert np.allclose(result.fixed_spectrum, [1.0])
    assert np.allclose(result.off_r0_spectrum, [0.0])
    assert result.fixed_poles_removed
    assert result.closed_loop_radius == pytest.approx(0.0, abs=1e-12)


def test_place_fixed_pole_inside_disc(example_triple, example_solution, tol) -> None:
    result = place_on_r0(example_triple, example_solution, [0.5], tol)
    assert np.allclose(result.A_cl, np.diag([0.5, 0.0]))
    assert result.closed_loop_radius == pytest.approx(0.5)


def test_desired_set_must_match_r0(example_triple, example_solution, tol) -> None:
    with pytest.raises(DesiredSetSizeMismatch):
        place_on_r0(example_triple, example_solution, [0.0, 0.0], tol)


def test_desired_set_must_be_conjugation_closed(example_triple, example_solution, tol) -> None:
    with pytest.raises(ConjugationViolation):
        place_on_r0(example_triple, example_solution, [0.5 + 0.1j], tol)


def test_place_on_pair_multi_input(rng, tol) -> None:
    poles = np.array([0.1, 0.2 + 0.1j, 0.2 - 0.1j])
    for seed in range(5):
        A = rng.standard_normal((3, 3))
        B = rng.standard_normal((3, 2))
        M = place_on_pair(A, B, poles, tol, seed=seed)
        assert multiset_close(sorted_eigenvalues(A + B @ M), poles, 1e-6)


def test_place_on_pair_single_input(tol) -> None:
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    B = np.array([[0.0], [1.0]])
    M = place_on_pair(A, B, np.array([0.0, 0.0]), tol)
    assert np.allclose(np.linalg.matrix_power(A + B @ M, 2), 0.0, atol=1e-10)


def test_auto_horizon(tol) -> None:
    assert auto_horizon(np.zeros((2, 2)), [3.0, 2.0]) == 2
    with pytest.raises(DivergentTrajectory):
        auto_horizon(np.diag([1.0, 0.0]), [3.0, 2.0])


def test_cost_is_invariant_under_free_term(example_triple, example_solution, tol) -> None:
    x0 = [3.0, 2.0]
    assert cost_invariance_residual(example_triple, example_solution, None, x0, tol, T=50) < 1e-10
    placed = place_on_r0(example_triple, example_solution, [0.0], tol)
    assert cost_invariance_residual(example_triple, example_solution, placed.L, x0, tol) < 1e-10
    L = np.array([[-0.5, 3.0], [0.2, -1.0]])
    assert cost_invariance_residual(example_triple, example_solution, L, x0, tol) < 1e-8


def test_unstable_closed_loop_needs_explicit_horizon(example_triple, example_solution, tol) -> None:
    with pytest.raises(DivergentTrajectory):
        cost_invariance_residual(example_triple, example_solution, None, [3.0, 2.0], tol)


def test_placed_control_keeps_optimal_cost_for_random_states(rng, example_triple, example_solution, tol) -> None:
    placed = place_on_r0(example_triple, example_solution, [0.0], tol)
    for _ in range(20):
        x0 = rng.standard_normal(2)
        residual = cost_invariance_residual(example_triple, example_solution, placed.L, x0, tol)
        assert residual <= 1e-8 * (1.0 + x0[1] ** 2)


def _random_poles(rng, count: int) -> list:
    poles = [complex(0.3, 0.2), complex(0.3, -0.2)] if count >= 2 else []
    return poles + list(rng.uniform(-0.8, 0.8, count - len(poles)))


def test_placement_on_rotated_example_blocks(rng, tol) -> None:
    for copies in (1, 2, 3, 2, 3):
        sigma, X_bar, free = rotated_example_blocks(rng, tol, copies)
        desired = _random_poles(rng, copies)
        result = place_on_r0(sigma, X_bar, desired, tol)
        assert multiset_close(result.placed_poles, desired, 1e-6)
        assert multiset_close(result.fixed_spectrum, np.ones(copies), 1e-8)
        assert multiset_close(result.off_r0_spectrum, off_r0_spectrum(sigma, X_bar, tol), 1e-8)
        assert result.fixed_poles_removed
        assert result.closed_loop_radius < 1.0

        q = x_quantities(sigma, X_bar, tol)
        complement = np.eye(sigma.n) - free.projector()
        for _ in range(5):
            x0 = rng.standard_normal(sigma.n)
            residual = cost_invariance_residual(sigma, X_bar, result.L, x0, tol)
            assert residual <= 1e-8 * (1.0 + optimal_cost(X_bar, x0))
            placed = simulate_trajectory(sigma, q.K_X, result.L, x0, 20, G=q.G_X)
            unplaced = simulate_trajectory(sigma, q.K_X, None, x0, 20, G=q.G_X)
            assert np.allclose(placed.states @ complement, unplaced.states @ complement, atol=1e-8)
