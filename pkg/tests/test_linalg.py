"""Eigensolver, definiteness classification, and orthonormalization tests.

np.linalg.eigh serves as the independent oracle for the Jacobi solver here;
the library itself never calls it.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from garland.errors import ValidationError
from garland.linalg import (
    as_symmetric,
    classify_definiteness,
    matrix_leq,
    max_abs,
    orthonormalize,
    sym_eigs,
)


def random_symmetric(rng, k, scale=1.0):
    m = rng.standard_normal((k, k)) * scale
    return (m + m.T) / 2.0


def test_sym_eigs_hand_example():
    spectrum = sym_eigs(np.array([[1.0, -0.5], [-0.5, 1.0]]))
    assert np.allclose(spectrum.eigenvalues, [0.5, 1.5], atol=1e-14)


def test_sym_eigs_matches_eigh_across_sizes():
    rng = np.random.default_rng(42)
    for k in (1, 2, 3, 5, 8, 13, 24):
        for scale in (1.0, 1e-6, 1e6):
            m = random_symmetric(rng, k, scale)
            ours = sym_eigs(m).eigenvalues
            oracle = np.linalg.eigvalsh(m)
            assert max_abs(ours - oracle) <= 1e-10 * max(1.0, max_abs(m))


def test_sym_eigs_vectors_reconstruct():
    rng = np.random.default_rng(7)
    m = random_symmetric(rng, 9)
    spectrum = sym_eigs(m, want_vectors=True)
    v = spectrum.eigenvectors
    assert max_abs(v.T @ v - np.eye(9)) <= 1e-12
    assert max_abs(v @ np.diag(spectrum.eigenvalues) @ v.T - m) <= 1e-12 * max(1.0, max_abs(m))


def test_sym_eigs_sorted_ascending():
    rng = np.random.default_rng(3)
    eigs = sym_eigs(random_symmetric(rng, 12)).eigenvalues
    assert np.all(np.diff(eigs) >= 0)


def test_as_symmetric_rejects_asymmetry():
    with pytest.raises(ValidationError):
        as_symmetric(np.array([[1.0, 0.5], [0.4, 1.0]]))
    with pytest.raises(ValidationError):
        as_symmetric(np.array([[1.0, np.nan], [np.nan, 1.0]]))
    with pytest.raises(ValidationError):
        as_symmetric(np.ones((2, 3)))


def test_classify_definiteness_hand_cases():
    assert classify_definiteness(np.diag([2.0, 3.0])).kind == "positive_definite"
    psd = classify_definiteness(np.ones((2, 2)))
    assert psd.kind == "positive_semidefinite"
    assert psd.corank == 1
    assert classify_definiteness(np.diag([1.0, -1.0])).kind == "indefinite"
    assert classify_definiteness(np.zeros((3, 3))).corank == 3


def test_classify_definiteness_agrees_with_cholesky():
    # Cholesky succeeds exactly on numerically positive definite input
    rng = np.random.default_rng(11)
    for trial in range(40):
        k = int(rng.integers(2, 8))
        b = rng.standard_normal((k, k + 2))
        m = b @ b.T
        if trial % 3 == 0:
            # rank-deficient variant
            b[:, :] = 0.0
            b[:, 0] = rng.standard_normal(k)
            m = b @ b.T
        verdict = classify_definiteness(m)
        try:
            np.linalg.cholesky(m - 1e-9 * max(1.0, max_abs(m)) * np.eye(k))
            chol_pd = True
        except np.linalg.LinAlgError:
            chol_pd = False
        if chol_pd:
            assert verdict.is_positive_definite
        if verdict.is_positive_definite:
            np.linalg.cholesky(m)


def test_orthonormalize_basic():
    basis, rank = orthonormalize([[2.0, 0.0, 0.0], [1.0, 1.0, 0.0]])
    assert rank == 2
    assert basis.shape == (3, 2)
    assert max_abs(basis.T @ basis - np.eye(2)) <= 1e-12


def test_orthonormalize_drops_dependent_vectors():
    basis, rank = orthonormalize([[1.0, 0.0], [2.0, 0.0], [0.0, 1.0]])
    assert rank == 2
    _, rank_dup = orthonormalize([[1.0, 1.0], [1.0, 1.0]])
    assert rank_dup == 1


def test_orthonormalize_empty_needs_ambient_dim():
    basis, rank = orthonormalize([], ambient_dim=4)
    assert rank == 0
    assert basis.shape == (4, 0)
    with pytest.raises(ValidationError):
        orthonormalize([])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 8))
def test_orthonormalize_spans_same_space(seed, count, dim):
    rng = np.random.default_rng(seed)
    rows = rng.standard_normal((count, dim))
    basis, rank = orthonormalize(rows)
    assert rank == np.linalg.matrix_rank(rows, tol=1e-8)
    assert max_abs(basis.T @ basis - np.eye(rank)) <= 1e-10
    # each input row is reproduced by its projection onto the basis
    residual = rows.T - basis @ (basis.T @ rows.T)
    assert max_abs(residual) <= 1e-7 * max(1.0, max_abs(rows))


def test_matrix_leq():
    a = np.array([[1.0, -0.5], [-0.5, 1.0]])
    b = np.array([[1.0, -0.25], [-0.25, 1.0]])
    assert matrix_leq(a, b)
    assert not matrix_leq(b, a)
    assert matrix_leq(a, a)
