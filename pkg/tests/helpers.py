"""Instance builders shared by the test modules."""

import numpy as np

from lagc import numerics
from lagc.instances import sharing_lagrangian
from lagc.lagrangian import Lagrangian, random_lagrangian
from lagc.symplectic import standard_space


def proj(B):
    return B @ B.T


def complement_projector(M, rank_tol=1e-10):
    B = numerics.orthonormalize(M, rank_tol)
    return np.eye(M.shape[0]) - proj(B)


def random_pair(rng, n):
    space = standard_space(n)
    return random_lagrangian(space, rng), random_lagrangian(space, rng)


def engineered_pair(rng, n, k):
    """Two random Lagrangians in R^{2n} meeting in exactly ``k`` dimensions."""
    L = random_lagrangian(standard_space(n), rng)
    return L, sharing_lagrangian(rng, L, k)


def line(space, vec):
    return Lagrangian.from_span(space, np.asarray(vec, dtype=float).reshape(-1, 1))


def lagrangian_containing(rng, space, S):
    """Random Lagrangian containing the isotropic span of ``S``."""
    from lagc.symplectic import standard_space as _std

    S = numerics.orthonormalize(S)
    k = S.shape[1]
    V1 = np.hstack([S, space.J @ S])
    rest = numerics.orthonormalize(np.eye(space.dim) - proj(V1))
    # J-adapted frame of the complement
    m = space.n - k
    if m == 0:
        return Lagrangian(space, S)
    from lagc.symplectic import adapted_frame

    J2 = rest.T @ space.J @ rest
    W = rest @ adapted_frame(0.5 * (J2 - J2.T))
    R = random_lagrangian(_std(m), rng).basis
    return Lagrangian(space, numerics.orthonormalize(np.hstack([S, W @ R])))


def adversarial_family(rng, n, size):
    """Family whose every new member meets the running candidate and its predecessor."""
    from lagc.engine import family_complement

    space = standard_space(n)
    family = [random_lagrangian(space, rng)]
    while len(family) < size:
        C = family_complement(family).candidate
        c = C.basis @ rng.standard_normal(n)
        prev = family[-1].basis
        # a vector of the predecessor omega-orthogonal to c
        coeffs = np.linalg.svd(((space.J @ c) @ prev)[None, :])[2][-1]
        ell = prev @ coeffs
        shared = np.column_stack([c, ell]) if n > 1 else c[:, None]
        family.append(lagrangian_containing(rng, space, shared))
    return family
