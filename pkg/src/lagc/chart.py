"""Graph charts on the Lagrangian Grassmannian.

For complementary Lagrangians ``L0, L1`` the map ``x + y -> (x, -rho(y))``
with ``rho = P_L0 J|_L1`` identifies ``V`` with ``L0 (+) L0``.  A
Lagrangian ``L`` transverse to ``L1`` is sent to the graph of ``-A`` for a
symmetric ``A``; that ``A`` is its chart coordinate.  All coordinates are
taken in the stored orthonormal bases of ``L0`` and ``L1``.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import numerics
from .errors import ChartDomainError, ContractError, NotInChartError
from .lagrangian import (
    TAU_TRANSVERSAL,
    Lagrangian,
    horizontal,
    intersect,
    is_complementary,
    vertical,
)

SYMMETRY_TOL = 1e-9
ENCODE_SYMMETRY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SymmetricOperator:
    """Symmetric ``n x n`` matrix, the coordinate of a Lagrangian in a chart."""

    A: np.ndarray

    def __post_init__(self):
        A = numerics.as_matrix(self.A, "A")
        if A.shape[0] != A.shape[1]:
            raise ContractError(f"operator must be square, got {A.shape}")
        if numerics.op_norm(A - A.T) > SYMMETRY_TOL * max(1.0, numerics.op_norm(A)):
            raise ContractError("operator is not symmetric")
        object.__setattr__(self, "A", A)

    @property
    def n(self):
        return self.A.shape[0]


class TransversalityCheck(NamedTuple):
    ok: bool
    sigma_min: float


@dataclass(frozen=True, eq=False)
class GraphChart:
    L0: Lagrangian
    L1: Lagrangian
    rho: np.ndarray
    sigma_min: float

    @property
    def space(self):
        return self.L0.space

    def coordinates(self, v):
        """Image of vectors (columns) under ``x + y -> (x, -rho(y))``."""
        n = self.space.n
        Z = numerics.solve(np.hstack([self.L0.basis, self.L1.basis]), v)
        return np.concatenate([Z[:n], -self.rho @ Z[n:]], axis=0)


def make_chart(L0, L1, tau=TAU_TRANSVERSAL):
    """Chart attached to the complementary pair ``(L0, L1)``."""
    ok, sigma = is_complementary(L0, L1, tau)
    if not ok:
        raise ChartDomainError("chart needs complementary Lagrangians", sigma)
    rho = L0.basis.T @ L0.space.J @ L1.basis
    if numerics.min_singular_value(rho) < tau:
        raise ChartDomainError("rho is not invertible", numerics.min_singular_value(rho))
    return GraphChart(L0, L1, rho, sigma)


def standard_chart(space):
    """Chart over (horizontal, vertical) in the standard model."""
    return make_chart(horizontal(space), vertical(space))


def chart_encode(chart, L):
    """Chart coordinate ``A`` of a Lagrangian transverse to ``chart.L1``.

    Raises
    ------
    NotInChartError
        When ``L`` meets ``chart.L1`` in a nonzero subspace.
    """
    k = intersect(L, chart.L1).dim
    if k:
        raise NotInChartError("Lagrangian is not transverse to the chart vertical", k)
    n = chart.space.n
    Z = numerics.solve(np.hstack([chart.L0.basis, chart.L1.basis]), L.basis)
    X, Y = Z[:n], Z[n:]
    # image columns are (X, -rho Y) = (u, -A u), so A X = rho Y
    A = numerics.solve(X.T, (chart.rho @ Y).T).T
    scale = max(1.0, numerics.op_norm(A))
    if numerics.op_norm(A - A.T) > ENCODE_SYMMETRY_TOL * scale:
        raise ContractError("encoded coordinate is not symmetric; chart or input is corrupt")
    return SymmetricOperator(numerics.symmetrize(A))


def chart_decode(chart, op):
    """Lagrangian whose chart coordinate is ``op``."""
    A = op.A if isinstance(op, SymmetricOperator) else SymmetricOperator(op).A
    n = chart.space.n
    if A.shape != (n, n):
        raise ContractError(f"operator must be {n}x{n}, got {A.shape}")
    Y = numerics.solve(chart.rho, A)
    span = chart.L0.basis + chart.L1.basis @ Y
    return Lagrangian(chart.space, numerics.orthonormalize(span))


def transversal_in_chart(chart, A, Ap, tau=TAU_TRANSVERSAL):
    """Complementarity of two charted Lagrangians via ``sigma_min(A - A')``."""
    A = A.A if isinstance(A, SymmetricOperator) else np.asarray(A, dtype=float)
    Ap = Ap.A if isinstance(Ap, SymmetricOperator) else np.asarray(Ap, dtype=float)
    sigma = numerics.min_singular_value(A - Ap)
    return TransversalityCheck(sigma >= tau, sigma)


def graph_span(A):
    """Columns spanning ``gr(A) = {(x, A x)}`` in ``R^n (+) R^n``."""
    A = numerics.as_matrix(A, "A")
    return np.vstack([np.eye(A.shape[1]), A])
