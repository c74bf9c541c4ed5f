"""Lagrangian and isotropic subspaces of an orthonormal-model symplectic space.

Subspaces are stored by orthonormal bases.  Everything here assumes the
space's Gram matrix is the identity; ``J`` may be any orthogonal complex
structure, which is how induced spaces on reduced pieces are represented.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import numerics
from .errors import ContractError
from .symplectic import SymplecticSpace, adapted_frame

LAGRANGIAN_TOL = 1e-8
TAU_TRANSVERSAL = 1e-8
ANGLE_TOL = 1e-10


class LagrangianCheck(NamedTuple):
    ok: bool
    residuals: dict


class ComplementCheck(NamedTuple):
    ok: bool
    sigma_min: float


def lagrangian_residuals(space, basis):
    """Orthonormality and isotropy residuals of ``basis`` in ``space``'s Gram."""
    B = np.asarray(basis, dtype=float)
    if B.ndim != 2 or B.shape[0] != space.dim:
        raise ContractError(f"basis must have {space.dim} rows, got shape {B.shape}")
    G = space.gram
    k = B.shape[1]
    ortho = numerics.op_norm(B.T @ G @ B - np.eye(k)) if k else 0.0
    iso = numerics.op_norm(B.T @ space.J.T @ G @ B) if k else 0.0
    return {"orthonormality": ortho, "isotropy": iso, "columns": k}


def is_lagrangian(space, basis, tol=LAGRANGIAN_TOL):
    """Test ``basis`` for orthonormality, isotropy and maximality.

    Returns
    -------
    LagrangianCheck
        ``ok`` plus the residual dictionary used to decide it.
    """
    res = lagrangian_residuals(space, basis)
    ok = (
        res["columns"] == space.n
        and res["orthonormality"] <= tol
        and res["isotropy"] <= tol
    )
    return LagrangianCheck(bool(ok), res)


def _require_orthonormal_model(space):
    if not isinstance(space, SymplecticSpace):
        raise ContractError("expected a SymplecticSpace")
    if not space.is_orthonormal_model:
        raise ContractError("subspace geometry requires a space with identity gram")


@dataclass(frozen=True, eq=False)
class Isotropic:
    """Isotropic subspace with an orthonormal basis of ``k <= n`` columns."""

    space: SymplecticSpace
    basis: np.ndarray

    def __post_init__(self):
        _require_orthonormal_model(self.space)
        B = np.asarray(self.basis, dtype=float).reshape(self.space.dim, -1)
        object.__setattr__(self, "basis", B)
        res = lagrangian_residuals(self.space, B)
        if res["columns"] > self.space.n:
            raise ContractError("isotropic subspace has more than n columns")
        if res["orthonormality"] > LAGRANGIAN_TOL or res["isotropy"] > LAGRANGIAN_TOL:
            raise ContractError(f"basis is not orthonormal isotropic: {res}")

    @property
    def dim(self):
        return self.basis.shape[1]


@dataclass(frozen=True, eq=False)
class Lagrangian:
    """Lagrangian subspace given by an orthonormal ``2n x n`` basis."""

    space: SymplecticSpace
    basis: np.ndarray

    def __post_init__(self):
        _require_orthonormal_model(self.space)
        B = numerics.as_matrix(self.basis, "basis")
        object.__setattr__(self, "basis", B)
        check = is_lagrangian(self.space, B)
        if not check.ok:
            raise ContractError(f"basis does not span a Lagrangian: {check.residuals}")

    @classmethod
    def from_span(cls, space, M):
        """Lagrangian spanned by the columns of ``M`` (orthonormalized first)."""
        return cls(space, numerics.orthonormalize(M))

    @property
    def n(self):
        return self.space.n

    def complement(self):
        """The orthogonal complement ``J(L)``."""
        return Lagrangian(self.space, self.space.J @ self.basis)


def horizontal(space):
    """``span(e_1..e_n)``; Lagrangian for the standard structure."""
    return Lagrangian(space, np.eye(space.dim)[:, : space.n])


def vertical(space):
    return Lagrangian(space, np.eye(space.dim)[:, space.n :])


def _same_space(L, Lp):
    if L.space is not Lp.space and not (
        L.space.dim == Lp.space.dim
        and np.array_equal(L.space.J, Lp.space.J)
        and np.array_equal(L.space.gram, Lp.space.gram)
    ):
        raise ContractError("subspaces live in different symplectic spaces")


def projection_matrix(L):
    """Orthogonal projector ``B B^T`` onto ``L``."""
    return L.basis @ L.basis.T


def gap_distance(L, Lp):
    """Gap metric ``||P_L - P_L'||`` (spectral norm), a number in [0, 1]."""
    _same_space(L, Lp)
    d = numerics.op_norm(projection_matrix(L) - projection_matrix(Lp))
    return min(1.0, d)


def intersect(L, Lp, angle_tol=ANGLE_TOL):
    """``L`` intersected with ``L'``, read off the principal angles.

    Directions whose principal cosine is at least ``1 - angle_tol`` are
    counted as common.  The returned basis averages the matched vectors
    from both sides before orthonormalizing.
    """
    _same_space(L, Lp)
    B, Bp = L.basis, Lp.basis
    U, s, Vt = np.linalg.svd(B.T @ Bp)
    k = int(np.sum(s >= 1.0 - angle_tol))
    if k == 0:
        return Isotropic(L.space, np.zeros((L.space.dim, 0)))
    common = 0.5 * (B @ U[:, :k] + Bp @ Vt.T[:, :k])
    S = numerics.orthonormalize(common)
    if S.shape[1] != k:
        S = np.linalg.svd(common, full_matrices=False)[0][:, :k]
    return Isotropic(L.space, S)


def is_complementary(L, Lp, tau=TAU_TRANSVERSAL):
    """Whether ``V = L (+) L'``; the witness is ``sigma_min([B | B'])``."""
    _same_space(L, Lp)
    sigma = numerics.min_singular_value(np.hstack([L.basis, Lp.basis]))
    return ComplementCheck(sigma >= tau, sigma)


@dataclass(frozen=True, eq=False)
class ReductionSplit:
    """``V = V1 (+) V2`` with ``V1 = S (+) J(S)`` for ``S = L & L'``.

    ``V2_basis`` is the frame ``[Lr | J Lr]`` identifying ``V2`` with the
    standard model; the reduced Lagrangians are expressed in it.
    """

    S: Isotropic
    V1_basis: np.ndarray
    V2_basis: np.ndarray
    reduced_space: SymplecticSpace
    L_reduced: Lagrangian
    Lprime_reduced: Lagrangian

    def lift(self, M):
        """Map reduced coordinates back into the ambient space."""
        return self.V2_basis @ M


def _top_left_singular(M, k):
    return np.linalg.svd(M, full_matrices=False)[0][:, :k]


def reduction_split(L, Lp):
    """Split off the common part of two Lagrangians.

    The reduced pair lives in ``V2 = (S (+) J S)^perp`` and meets only
    in zero, so the transverse construction applies to it.
    """
    _same_space(L, Lp)
    space = L.space
    J = space.J
    S = intersect(L, Lp)
    k, n = S.dim, space.n
    V1 = np.hstack([S.basis, J @ S.basis])
    m = n - k
    if m == 0:
        return ReductionSplit(S, V1, np.zeros((space.dim, 0)), None, None, None)
    P2 = np.eye(space.dim) - V1 @ V1.T
    Lr = _top_left_singular(P2 @ L.basis, m)
    W = np.hstack([Lr, J @ Lr])
    W = numerics.orthonormalize(W)
    J2 = W.T @ J @ W
    J2 = 0.5 * (J2 - J2.T)
    reduced = SymplecticSpace(J2)
    L_red = Lagrangian(reduced, numerics.orthonormalize(W.T @ Lr))
    Lp_red = Lagrangian(reduced, _top_left_singular(W.T @ P2 @ Lp.basis, m))
    return ReductionSplit(S, V1, W, reduced, L_red, Lp_red)


def random_symmetric(rng, n, scale=1.0):
    G = rng.standard_normal((n, n))
    return scale * (G + G.T) / 2.0


def random_unitary_embedding(rng, n):
    """Real ``2n x 2n`` form of a Haar unitary; it commutes with the standard ``J``."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    Q = Q * (d / np.abs(d))
    X, Y = Q.real, Q.imag
    return np.block([[X, -Y], [Y, X]])


def random_lagrangian(space, seed):
    """Random Lagrangian: graph of a random symmetric matrix in a rotated frame.

    The rotation is Haar-distributed on the group of orthogonal maps
    commuting with ``J``.  ``seed`` may be an int or a ``numpy`` Generator.
    """
    _require_orthonormal_model(space)
    rng = np.random.default_rng(seed)
    n = space.n
    A = random_symmetric(rng, n)
    graph = numerics.orthonormalize(np.vstack([np.eye(n), A]))
    U = random_unitary_embedding(rng, n)
    W = adapted_frame(space.J)
    return Lagrangian(space, numerics.orthonormalize(W @ U @ graph))
