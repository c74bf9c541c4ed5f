"""Symplectic Hilbert spaces and normalization of raw symplectic forms.

A space carries an inner-product Gram matrix and an orthogonal complex
structure ``J``; the form is ``omega(u, v) = <J u, v>``.  A raw form
``omega = <H ., .>`` is brought to that shape through the polar
decomposition ``H = P J``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .errors import ContractError, DegenerateFormError

STRUCTURE_TOL = 1e-10
POLAR_STEPS = 2


def standard_j(n):
    """Block complex structure ``J(x, y) = (-y, x)`` on R^{2n}."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]])


@dataclass(frozen=True, eq=False)
class SymplecticSpace:
    """Finite-dimensional symplectic Hilbert space ``(R^{2n}, gram, J)``."""

    J: np.ndarray
    gram: np.ndarray = field(default=None)

    def __post_init__(self):
        J = numerics.as_matrix(self.J, "J")
        dim = J.shape[0]
        if J.shape[1] != dim or dim == 0 or dim % 2:
            raise ContractError(f"J must be square of even size, got {J.shape}")
        G = np.eye(dim) if self.gram is None else numerics.as_matrix(self.gram, "gram")
        if G.shape != J.shape:
            raise ContractError("gram and J shapes differ")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "gram", G)
        res = self.residuals()
        if max(res.values()) > STRUCTURE_TOL:
            raise ContractError(f"not a normalized symplectic space: {res}")

    @property
    def dim(self):
        return self.J.shape[0]

    @property
    def n(self):
        return self.J.shape[0] // 2

    @property
    def is_orthonormal_model(self):
        """True when the Gram matrix is exactly the identity."""
        return bool(np.array_equal(self.gram, np.eye(self.dim)))

    def residuals(self):
        J, G = self.J, self.gram
        eye = np.eye(self.dim)
        scale = max(1.0, numerics.op_norm(G))
        sym = numerics.op_norm(G - G.T) / scale
        try:
            pd = float(np.linalg.eigvalsh(numerics.symmetrize(G))[0])
        except np.linalg.LinAlgError:
            pd = -1.0
        return {
            "j_squared": numerics.op_norm(J @ J + eye),
            "j_orthogonal": numerics.op_norm(J.T @ G @ J - G) / scale,
            "gram_symmetric": sym,
            "gram_positive": 0.0 if pd > 0 else 1.0,
        }


@dataclass(frozen=True, eq=False)
class RawSymplecticForm:
    """A form ``omega = <H ., .>_gram`` with ``H`` anti-self-adjoint."""

    H: np.ndarray
    gram: np.ndarray = field(default=None)

    def __post_init__(self):
        H = numerics.as_matrix(self.H, "H")
        if H.shape[0] != H.shape[1] or H.shape[0] % 2 or H.shape[0] == 0:
            raise ContractError(f"H must be square of even size, got {H.shape}")
        G = np.eye(H.shape[0]) if self.gram is None else numerics.as_matrix(self.gram, "gram")
        if G.shape != H.shape:
            raise ContractError("gram and H shapes differ")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "gram", G)
        # <Hu, v>_G = -<u, Hv>_G  <=>  H^T G + G H = 0
        scale = max(1.0, numerics.op_norm(G) * numerics.op_norm(H))
        if numerics.op_norm(H.T @ G + G @ H) > STRUCTURE_TOL * scale:
            raise ContractError("H is not anti-self-adjoint for the given gram")

    @property
    def dim(self):
        return self.H.shape[0]


def standard_space(n):
    """The space ``R^n (+) R^n`` with identity Gram and ``J(x, y) = (-y, x)``."""
    if int(n) < 1:
        raise ContractError(f"standard_space needs n >= 1, got {n}")
    return SymplecticSpace(standard_j(int(n)))


def _cholesky_factor(G):
    # upper R with G = R^T R
    try:
        return np.linalg.cholesky(numerics.symmetrize(G)).T
    except np.linalg.LinAlgError as exc:
        raise ContractError("gram is not positive definite") from exc


def normalize(raw, degenerate_tol=1e-12):
    """Replace the inner product so the form is represented by an orthogonal ``J``.

    With ``H = P J`` the polar decomposition of ``H`` (w.r.t. the base
    Gram), the returned space has Gram ``G P`` and complex structure
    ``J = P^{-1} H``.  ``P`` is computed as ``(-H^2)^{1/2}`` from a
    symmetric eigendecomposition in Gram-orthonormal coordinates.
    """
    H, G = raw.H, raw.gram
    if numerics.min_singular_value(H) <= degenerate_tol * numerics.op_norm(H):
        raise DegenerateFormError("symplectic form is degenerate")
    R = _cholesky_factor(G)
    R_inv = np.linalg.inv(R)
    H_t = R @ H @ R_inv
    H_t = 0.5 * (H_t - H_t.T)
    eig = numerics.symmetric_eigen(numerics.symmetrize(H_t.T @ H_t))
    U, lam = eig.eigenvectors, eig.eigenvalues
    root = np.sqrt(lam)
    P_t = numerics.symmetrize((U * root) @ U.T)
    J_t = (U / root) @ U.T @ H_t
    J_t = 0.5 * (J_t - J_t.T)
    # squaring H costs accuracy on small singular values; Newton polar
    # steps X <- (X + X^{-T})/2 restore orthogonality and keep X antisymmetric
    for _ in range(POLAR_STEPS):
        J_t = 0.5 * (J_t + np.linalg.inv(J_t).T)
        J_t = 0.5 * (J_t - J_t.T)
    P = R_inv @ P_t @ R
    J = R_inv @ J_t @ R
    return SymplecticSpace(J, numerics.symmetrize(G @ P))


def polar_factor(raw):
    """Positive factor ``P`` of ``H = P J`` (for diagnostics and tests)."""
    space = normalize(raw)
    return np.linalg.solve(raw.gram, space.gram)


def omega(space, u, v):
    """Evaluate ``<J u, v>`` in the space's Gram."""
    u = np.asarray(u, dtype=float).reshape(-1)
    v = np.asarray(v, dtype=float).reshape(-1)
    if u.shape[0] != space.dim or v.shape[0] != space.dim:
        raise ContractError(
            f"omega expects vectors of length {space.dim}, got {u.shape[0]} and {v.shape[0]}"
        )
    return float((space.J @ u) @ space.gram @ v)


def adapted_frame(J):
    """Orthogonal ``W`` with ``W^T J W`` equal to the standard block structure.

    ``J`` must be orthogonal and antisymmetric.  Columns are produced by a
    symplectic Gram-Schmidt sweep over the coordinate axes, so the frame is
    a deterministic function of ``J``.
    """
    J = numerics.as_matrix(J, "J")
    dim = J.shape[0]
    n = dim // 2
    xs = np.zeros((dim, n))
    span = np.zeros((dim, 0))
    axes = np.eye(dim)
    for k in range(n):
        residual = axes - span @ (span.T @ axes)
        norms = np.linalg.norm(residual, axis=0)
        j = int(np.argmax(norms))
        x = residual[:, j] / norms[j]
        # one reprojection pass keeps the frame orthogonal to rounding
        x = x - span @ (span.T @ x)
        x /= np.linalg.norm(x)
        xs[:, k] = x
        span = np.column_stack([span, x, J @ x])
    return np.column_stack([xs, J @ xs])


def to_standard(space):
    """Isometry onto the standard model.

    Returns ``(std, T)`` where ``std = standard_space(n)`` and ``T`` maps
    coordinates of ``space`` to standard coordinates, i.e. a vector ``x``
    becomes ``T @ x``.
    """
    R = _cholesky_factor(space.gram)
    J_t = R @ space.J @ np.linalg.inv(R)
    J_t = 0.5 * (J_t - J_t.T)
    W = adapted_frame(J_t)
    return standard_space(space.n), W.T @ R
