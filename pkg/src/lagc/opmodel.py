"""Multiplication operators on finite discrete measure spaces.

``L^2(X, mu)`` for ``m`` atoms is ``R^m`` with Gram ``diag(mu)``; the
operator ``M_f`` multiplies pointwise by ``f``.  The isometry
``phi_i -> sqrt(mu_i) phi_i`` carries everything into the standard model.
"""

from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import ContractError
from .lagrangian import Lagrangian, vertical
from .symplectic import SymplecticSpace, standard_j, standard_space


@dataclass(frozen=True, eq=False)
class DiscreteMeasureSpace:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if w.size < 1 or not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ContractError("weights must be finite, positive and nonempty")
        object.__setattr__(self, "weights", w)

    @property
    def m(self):
        return self.weights.size

    @classmethod
    def uniform(cls, m):
        return cls(np.ones(int(m)))


@dataclass(frozen=True, eq=False)
class Multiplier:
    space: DiscreteMeasureSpace
    values: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.values, dtype=float).reshape(-1)
        if f.size != self.space.m:
            raise ContractError(f"need {self.space.m} values, got {f.size}")
        if not np.all(np.isfinite(f)):
            raise ContractError("multiplier values must be finite")
        object.__setattr__(self, "values", f)

    def inverse_norm(self):
        """``||M_f^{-1}||`` (infinite when ``f`` vanishes somewhere)."""
        low = float(np.min(np.abs(self.values)))
        return np.inf if low == 0.0 else 1.0 / low


def weighted_space(ms):
    """``L^2(X, mu) (+) L^2(X, mu)`` with Gram ``diag(mu, mu)`` and the block ``J``."""
    w = ms.weights
    return SymplecticSpace(standard_j(ms.m), np.diag(np.concatenate([w, w])))


def weighted_graph_basis(mult):
    """``mu``-orthonormal basis of ``gr(M_f)`` in the weighted coordinates."""
    f, w = mult.values, mult.space.weights
    scale = 1.0 / np.sqrt(w * (1.0 + f**2))
    return np.vstack([np.diag(scale), np.diag(f * scale)])


def graph_lagrangian(mult):
    """``gr(M_f)`` as a Lagrangian of the standard ``2m``-dimensional model."""
    f = mult.values
    c = 1.0 / np.sqrt(1.0 + f**2)
    return Lagrangian(standard_space(mult.space.m), np.vstack([np.diag(c), np.diag(f * c)]))


def band_shift(mult, epsilon):
    """``g = eps`` on the atoms where ``|f| <= eps/2`` and zero elsewhere."""
    if not epsilon > 0:
        raise ContractError(f"epsilon must be positive, got {epsilon}")
    g = np.where(np.abs(mult.values) <= epsilon / 2.0, float(epsilon), 0.0)
    return Multiplier(mult.space, g)


def tangent_grid(m):
    """``f(i) = tan(pi/2 * i/(m+1))`` for ``i = 1..m``; unbounded as ``m`` grows."""
    i = np.arange(1, int(m) + 1)
    return np.tan(0.5 * np.pi * i / (int(m) + 1))


def unbounded_stress(m_list, epsilon):
    """Run the shift on ever larger tangent grids.

    Each row reports the largest multiplier value, the smallest gap
    ``|f - g|`` and ``sigma_min`` of the graph stacked against the vertical.
    """
    m_list = [int(m) for m in m_list]
    if not m_list or min(m_list) < 1:
        raise ContractError("m_list must be nonempty with positive entries")
    if not epsilon > 0:
        raise ContractError(f"epsilon must be positive, got {epsilon}")
    rows = []
    for m in m_list:
        mult = Multiplier(DiscreteMeasureSpace.uniform(m), tangent_grid(m))
        g = band_shift(mult, epsilon).values
        L = graph_lagrangian(mult)
        sigma = numerics.min_singular_value(np.hstack([L.basis, vertical(L.space).basis]))
        rows.append(
            {
                "m": m,
                "max_f": float(np.max(np.abs(mult.values))),
                "min_gap": float(np.min(np.abs(mult.values - g))),
                "sigma_min_vertical": sigma,
            }
        )
    return rows
