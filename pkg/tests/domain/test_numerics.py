import numpy as np
import pytest

from app.domain.exceptions import NonFiniteEntries, NotPositiveSemidefinite, NotSymmetric
from app.domain.numerics import (
    as_matrix,
    image_basis,
    is_psd,
    kernel_basis,
    block_psd_report,
    min_eigenvalue,
    multiset_close,
    orthogonal_complement,
    pinv,
    psd_factor,
    psd_sqrt,
    rank_svd,
    require_symmetric,
    schur_psd,
    sorted_eigenvalues,
    span,
    subspace_contains,
    subspace_distance,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)
from app.entities.subspace import Subspace
from tests.factories import random_psd


def _low_rank(rng, rows, cols, rank):
    return rng.standard_normal((rows, rank)) @ rng.standard_normal((rank, cols))


def test_as_matrix_rejects_non_finite_entries() -> None:
    with pytest.raises(NonFiniteEntries):
        as_matrix([[1.0, np.nan]])


def test_require_symmetric_rejects_asymmetric_matrix(tol) -> None:
    with pytest.raises(NotSymmetric):
        require_symmetric([[1.0, 2.0], [0.0, 1.0]], tol, "Q")


def test_rank_ignores_roundoff_singular_values(rng, tol) -> None:
    M = _low_rank(rng, 6, 5, 3)
    assert rank_svd(M, tol) == 3
    assert rank_svd(np.zeros((3, 3)), tol) == 0


def test_pinv_satisfies_moore_penrose_axioms(rng, tol) -> None:
    for _ in range(20):
        rows, cols = rng.integers(2, 7, size=2)
        M = _low_rank(rng, rows, cols, int(rng.integers(1, min(rows, cols) + 1)))
        P = pinv(M, tol)
        assert np.allclose(M @ P @ M, M, atol=1e-8)
        assert np.allclose(P @ M @ P, P, atol=1e-8)
        assert np.allclose((M @ P).T, M @ P, atol=1e-8)
        assert np.allclose((P @ M).T, P @ M, atol=1e-8)


def test_pinv_of_symmetric_matrix_is_symmetric(rng, tol) -> None:
    M = random_psd(rng, 4, rank=2)
    P = pinv(M, tol)
    assert np.array_equal(P, P.T)


def test_kernel_and_image_dimensions_add_up(rng, tol) -> None:
    M = _low_rank(rng, 4, 6, 2)
    kernel = kernel_basis(M, tol)
    image = image_basis(M, tol)
    assert kernel.dim + image.dim == 6
    assert np.allclose(M @ kernel.basis, 0.0, atol=1e-10)
    assert np.allclose(kernel.basis.T @ kernel.basis, np.eye(kernel.dim))


def test_kernel_of_empty_row_matrix_is_whole_space(tol) -> None:
    assert kernel_basis(np.zeros((0, 3)), tol).is_full


def test_subspace_operations_on_coordinate_planes(tol) -> None:
    e = np.eye(3)
    U = span(e[:, [0, 1]], tol)
    V = span(e[:, [1, 2]], tol)
    assert subspace_intersect(U, V, tol).dim == 1
    assert subspace_equal(subspace_intersect(U, V, tol), span(e[:, [1]], tol), tol)
    assert subspace_sum(U, V, tol).is_full
    assert subspace_contains(U, span(e[:, [0]], tol), tol)
    assert not subspace_contains(U, V, tol)
    assert subspace_equal(orthogonal_complement(U, tol), span(e[:, [2]], tol), tol)


def test_subspace_equality_ignores_choice_of_basis(rng, tol) -> None:
    basis = np.linalg.qr(rng.standard_normal((4, 2)))[0]
    mixed = basis @ np.array([[2.0, 1.0], [-1.0, 3.0]])
    U = Subspace(4, basis)
    V = span(mixed, tol)
    assert subspace_equal(U, V, tol)
    assert subspace_distance(U, V) < 1e-10
    assert subspace_distance(U, Subspace.zero(4)) == 1.0


def test_zero_subspace_edge_cases(tol) -> None:
    zero = Subspace.zero(3)
    full = Subspace.full(3)
    assert subspace_intersect(zero, full, tol).is_zero
    assert subspace_contains(zero, zero, tol)
    assert orthogonal_complement(zero, tol).is_full


def test_psd_checks_and_min_eigenvalue(tol) -> None:
    assert is_psd(np.diag([1.0, 0.0]), tol)
    assert not is_psd(np.diag([1.0, -1.0]), tol)
    assert min_eigenvalue(np.diag([3.0, -2.0])) == pytest.approx(-2.0)


def test_psd_factor_reproduces_matrix_with_rank_rows(rng, tol) -> None:
    M = random_psd(rng, 5, rank=3)
    F = psd_factor(M, tol)
    assert F.shape == (3, 5)
    assert np.allclose(F.T @ F, M, atol=1e-9)


def test_psd_factor_rejects_indefinite_matrix(tol) -> None:
    with pytest.raises(NotPositiveSemidefinite) as info:
        psd_factor(np.diag([1.0, -0.5]), tol)
    assert info.value.min_eigenvalue == pytest.approx(-0.5)


def test_psd_sqrt_squares_back(rng, tol) -> None:
    M = random_psd(rng, 4)
    root = psd_sqrt(M, tol)
    assert np.allclose(root @ root, M, atol=1e-9)
    assert np.allclose(root, root.T)


def test_block_facts_hold_for_random_psd_matrices(rng, tol) -> None:
    for _ in range(200):
        rank = int(rng.integers(1, 6))
        P = random_psd(rng, 5, rank=rank)
        facts = block_psd_report(P[:3, :3], P[:3, 3:], P[3:, 3:], tol)
        assert facts.kernel_inclusion
        assert facts.range_identity
        assert facts.complement_psd
        assert facts.assembled_psd


def test_block_facts_hold_for_large_rank_one_matrices(rng, tol) -> None:
    for _ in range(200):
        v = 30.0 * rng.standard_normal(5)
        P = np.outer(v, v)
        facts = block_psd_report(P[:3, :3], P[:3, 3:], P[3:, 3:], tol)
        assert facts.complement_psd
        assert facts.assembled_psd


def test_psd_cutoff_follows_reference_scale(tol) -> None:
    roundoff = np.diag([-5e-13, 0.0])
    assert not is_psd(roundoff, tol)
    assert is_psd(roundoff, tol, scale=1e4)
    assert not is_psd(np.diag([-1.0, 0.0]), tol, scale=1e4)
    assert psd_factor(roundoff, tol, scale=1e4).shape == (0, 2)


def test_block_facts_flag_kernel_violation(tol) -> None:
    facts = block_psd_report([[1.0]], [[1.0]], [[0.0]], tol)
    assert not facts.kernel_inclusion
    assert not facts.assembled_psd


def test_schur_psd_returns_generalized_complement(tol) -> None:
    complement = schur_psd([[2.0]], [[1.0]], [[1.0]], tol)
    assert complement == pytest.approx(np.array([[1.0]]))


def test_schur_psd_rejects_indefinite_block_matrix(tol) -> None:
    with pytest.raises(NotPositiveSemidefinite):
        schur_psd([[1.0]], [[2.0]], [[1.0]], tol)


def test_sorted_eigenvalues_and_multiset_comparison() -> None:
    rotation = np.array([[0.0, -1.0], [1.0, 0.0]])
    eigenvalues = sorted_eigenvalues(rotation)
    assert multiset_close(eigenvalues, [1j, -1j], 1e-12)
    assert not multiset_close(eigenvalues, [1j, 1j], 1e-12)
    assert not multiset_close([1.0], [1.0, 2.0], 1e-12)
