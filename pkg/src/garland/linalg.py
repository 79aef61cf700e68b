"""Dense symmetric eigensolver and small-matrix utilities.

Everything downstream funnels through `sym_eigs`, which runs a cyclic Jacobi
iteration: rotations sweep the strict upper triangle in row-major order until
the off-diagonal Frobenius norm falls below 1e-12 times the Frobenius norm of
the input, with a hard cap of 100 sweeps.  Jacobi is preferred here over a
tridiagonalization pipeline because the matrices are tiny (rank of a Coxeter
system, or a handful of subspaces) and Jacobi's eigenvectors are orthonormal
to working precision, which the subspace code leans on.

The sweep kernel is JIT-compiled with numba when numba is importable and runs
as plain Python otherwise; both paths execute the same statements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ValidationError

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

SYMMETRY_TOL = 1e-12
RESIDUAL_SCALE = 1e-9
JACOBI_SWEEP_CAP = 100
JACOBI_OFFDIAG_TOL = 1e-12


def _jacobi_kernel(a, v):
    """Diagonalize symmetric `a` in place, accumulating rotations into `v`."""
    n = a.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    stop = 1e-12 * np.sqrt(fro)
    for _ in range(100):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if np.sqrt(off) <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[p, k] = a[k, p]
                        a[k, q] = s * akp + c * akq
                        a[q, k] = a[k, q]
                app = a[p, p]
                aqq = a[q, q]
                a[p, p] = c * c * app - 2.0 * s * c * apq + s * s * aqq
                a[q, q] = s * s * app + 2.0 * s * c * apq + c * c * aqq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq


if NUMBA_AVAILABLE:
    _jacobi_kernel = njit(cache=True)(_jacobi_kernel)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order, with eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


@dataclass(frozen=True)
class DefinitenessClass:
    """Sign classification of a symmetric matrix.

    `kind` is one of "positive_definite", "positive_semidefinite",
    "indefinite".  `corank` counts eigenvalues within the zero tolerance and
    is 0 unless `kind` is "positive_semidefinite".
    """

    kind: str
    corank: int

    @property
    def is_positive_definite(self) -> bool:
        return self.kind == "positive_definite"

    @property
    def is_positive_semidefinite(self) -> bool:
        return self.kind == "positive_semidefinite"


def max_abs(m: np.ndarray) -> float:
    """Largest absolute entry of an array (0.0 for an empty one)."""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m)))


def as_symmetric(matrix, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Validate and return a float64 copy of a symmetric square matrix.

    Entries must be finite and the asymmetry max |M - M^T| must not exceed
    `tol`; the returned copy is exactly symmetrized so later arithmetic never
    sees the stray low-order bits.
    """
    m = np.array(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValidationError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix entries must be finite")
    if max_abs(m - m.T) > tol:
        raise ValidationError(
            f"matrix is not symmetric within {tol:g}: max |M - M^T| = {max_abs(m - m.T):g}"
        )
    return (m + m.T) / 2.0


def sym_eigs(matrix, want_vectors: bool = False) -> Spectrum:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi.

    Returns eigenvalues ascending; when `want_vectors` is set the columns of
    `eigenvectors` are the matching orthonormal eigenvectors.
    """
    m = as_symmetric(matrix)
    n = m.shape[0]
    a = np.ascontiguousarray(m)
    v = np.eye(n)
    _jacobi_kernel(a, v)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if want_vectors:
        return Spectrum(eigenvalues=w, eigenvectors=v[:, order])
    return Spectrum(eigenvalues=w)


def default_zero_tol(matrix: np.ndarray) -> float:
    """Scale-aware tolerance used to call an eigenvalue zero."""
    return RESIDUAL_SCALE * max(1.0, max_abs(matrix))


def classify_definiteness(matrix, zero_tol: float | None = None) -> DefinitenessClass:
    """Classify a symmetric matrix by the sign of its spectrum.

    Positive definite when the smallest eigenvalue exceeds `zero_tol`;
    positive semidefinite when it is at least `-zero_tol`, with corank the
    number of eigenvalues within `zero_tol` of zero; indefinite otherwise.
    """
    m = as_symmetric(matrix)
    if zero_tol is None:
        zero_tol = default_zero_tol(m)
    w = sym_eigs(m).eigenvalues
    smallest = w[0]
    if smallest > zero_tol:
        return DefinitenessClass(kind="positive_definite", corank=0)
    if smallest >= -zero_tol:
        corank = int(np.count_nonzero(np.abs(w) <= zero_tol))
        return DefinitenessClass(kind="positive_semidefinite", corank=corank)
    return DefinitenessClass(kind="indefinite", corank=0)


def matrix_leq(a, b) -> bool:
    """Exact entrywise comparison a <= b for same-shaped symmetric matrices."""
    ma = as_symmetric(a)
    mb = as_symmetric(b)
    if ma.shape != mb.shape:
        raise DimensionMismatchError(f"shape mismatch: {ma.shape} vs {mb.shape}")
    return bool(np.all(ma <= mb))


def orthonormalize(
    vectors,
    rank_tol: float | None = None,
    ambient_dim: int | None = None,
) -> tuple[np.ndarray, int]:
    """Orthonormalize a list of row vectors by modified Gram-Schmidt.

    Each vector is orthogonalized against the basis found so far, twice, and
    kept only if its residual norm exceeds `rank_tol` (default: 1e-8 times
    the largest input vector norm).  Returns `(basis, rank)` where `basis`
    has orthonormal columns, shape `(ambient_dim, rank)`.

    An empty vector list is legal and yields rank 0, but then `ambient_dim`
    must be supplied since it cannot be inferred.
    """
    arr = np.array(vectors, dtype=float)
    if arr.size == 0:
        if ambient_dim is None:
            if arr.ndim == 2 and arr.shape[1] > 0:
                ambient_dim = arr.shape[1]
            else:
                raise ValidationError(
                    "ambient_dim is required to orthonormalize an empty vector list"
                )
        if ambient_dim < 1:
            raise ValidationError("ambient dimension must be at least 1")
        return np.zeros((ambient_dim, 0)), 0
    if arr.ndim != 2:
        raise ValidationError(f"expected a 2-d array of row vectors, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("vector entries must be finite")
    d = arr.shape[1]
    if d < 1:
        raise ValidationError("ambient dimension must be at least 1")
    if ambient_dim is not None and ambient_dim != d:
        raise DimensionMismatchError(f"vectors have dimension {d}, expected {ambient_dim}")
    norms = np.sqrt(np.sum(arr * arr, axis=1))
    if rank_tol is None:
        rank_tol = 1e-8 * float(np.max(norms))
    basis: list[np.ndarray] = []
    for row in arr:
        w = row.copy()
        for _ in range(2):  # second pass mops up cancellation error
            for b in basis:
                w -= (b @ w) * b
        nrm = float(np.linalg.norm(w))
        if nrm > rank_tol:
            basis.append(w / nrm)
    if not basis:
        return np.zeros((d, 0)), 0
    return np.column_stack(basis), len(basis)
