"""Dense real-matrix kernel.

Thin contracts over LAPACK (via numpy) that every geometric module uses:
a deterministic symmetric eigensolver, rank-revealing orthonormalization,
minimum singular values and a guarded linear solve.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, SingularMatrixError

SYMMETRY_TOL = 1e-12
SINGULARITY_TOL = 1e-12
DEFAULT_RANK_TOL = 1e-10


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D float64 array."""
    A = np.asarray(M, dtype=float)
    if A.ndim == 1:
        A = A[:, np.newaxis]
    if A.ndim != 2:
        raise ContractError(f"{name} must be 2-D, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ContractError(f"{name} has non-finite entries")
    return A


def op_norm(M):
    """Spectral norm; zero for empty matrices."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def symmetrize(S):
    return 0.5 * (S + S.T)


def _fix_signs(U):
    # first entry at least half the column's max magnitude is made positive
    U = U.copy()
    for k in range(U.shape[1]):
        col = U[:, k]
        mags = np.abs(col)
        if mags.size == 0 or mags.max() == 0.0:
            continue
        i = int(np.argmax(mags >= 0.5 * mags.max()))
        if col[i] < 0:
            U[:, k] = -col
    return U


@dataclass(frozen=True)
class SymmetricEigenResult:
    """Eigenpairs of a symmetric matrix.

    ``eigenvalues`` are sorted in descending order and column ``k`` of
    ``eigenvectors`` belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.T


def symmetric_eigen(S):
    """Eigendecomposition ``S = U diag(lam) U^T`` of a real symmetric matrix.

    Parameters
    ----------
    S : array_like, shape (n, n)
        Symmetric input; asymmetry beyond ``1e-12 * max(1, ||S||)`` is
        rejected.

    Returns
    -------
    SymmetricEigenResult
        Descending eigenvalues, orthogonal eigenvectors with a fixed sign
        convention so identical input bytes give identical output bytes.
    """
    S = as_matrix(S, "S")
    if S.shape[0] != S.shape[1]:
        raise ContractError(f"symmetric_eigen needs a square matrix, got {S.shape}")
    scale = max(1.0, op_norm(S))
    if op_norm(S - S.T) > SYMMETRY_TOL * scale:
        raise ContractError("symmetric_eigen input is not symmetric")
    lam, U = np.linalg.eigh(symmetrize(S))
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    U = _fix_signs(U[:, order])
    return SymmetricEigenResult(lam, U)


def orthonormalize(M, rank_tol=DEFAULT_RANK_TOL):
    """Orthonormal basis of the numerical column space of ``M``.

    Singular values at or below ``rank_tol * max(1, largest column norm)``
    are treated as zero. Full-rank input is orthonormalized by a QR
    factorization with positive diagonal, so the span of every leading
    block of columns is preserved; rank-deficient input falls back to the
    leading left singular vectors.
    """
    M = as_matrix(M, "M")
    rows, cols = M.shape
    if cols == 0 or rows == 0:
        return np.zeros((rows, 0))
    threshold = rank_tol * max(1.0, float(np.max(np.linalg.norm(M, axis=0))))
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    rank = int(np.sum(s > threshold))
    if rank == 0:
        return np.zeros((rows, 0))
    if rank == cols:
        Q, R = np.linalg.qr(M)
        signs = np.where(np.diag(R) < 0, -1.0, 1.0)
        return Q * signs
    return _fix_signs(U[:, :rank])


def min_singular_value(M):
    """Smallest singular value of ``M`` (of its thin SVD)."""
    M = as_matrix(M, "M")
    if M.size == 0:
        raise ContractError("min_singular_value of an empty matrix")
    return float(np.linalg.svd(M, compute_uv=False)[-1])


def solve(M, rhs, singular_tol=SINGULARITY_TOL):
    """Solve ``M X = rhs`` for square, well-posed ``M``.

    Raises
    ------
    SingularMatrixError
        If ``sigma_min(M) <= singular_tol * ||M||``.
    """
    M = as_matrix(M, "M")
    if M.shape[0] != M.shape[1]:
        raise ContractError(f"solve needs a square matrix, got {M.shape}")
    rhs_arr = np.asarray(rhs, dtype=float)
    sigma = min_singular_value(M)
    if sigma <= singular_tol * op_norm(M) or sigma == 0.0:
        raise SingularMatrixError("matrix is singular to working tolerance", sigma)
    return np.linalg.solve(M, rhs_arr)
