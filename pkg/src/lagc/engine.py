"""Common complementary Lagrangians.

The construction runs bottom-up: a spectral shift makes ``A - A'``
invertible with a controlled inverse; in the chart over ``(L1^perp, L1)``
that shift yields a complement to a transverse pair; splitting off the
intersection handles an arbitrary pair; and a finite family is absorbed
one member at a time by perturbing the running candidate inside a chart.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import numerics
from .chart import SymmetricOperator, chart_decode, chart_encode, make_chart
from .errors import ContractError, RefinementError, SamplingError
from .lagrangian import (
    LAGRANGIAN_TOL,
    TAU_TRANSVERSAL,
    Lagrangian,
    intersect,
    is_complementary,
    lagrangian_residuals,
    random_symmetric,
    reduction_split,
)


@dataclass(frozen=True)
class ComplementConfig:
    """Tolerances and knobs for the complement engine.

    ``tau`` is the certificate threshold on ``sigma_min([B_i | B'])``.
    ``margin`` is the working threshold the refinement loop keeps every
    member above; it is at least ``tau``.
    """

    tau: float = TAU_TRANSVERSAL
    margin: float = 1e-6
    epsilon: float | None = None
    delta0: float = 0.5
    delta_floor: float = 1e-12
    seed: int = 0
    max_tries: int = 1000
    lagrangian_tol: float = LAGRANGIAN_TOL

    def __post_init__(self):
        if self.tau <= 0 or self.margin < self.tau:
            raise ContractError("need 0 < tau <= margin")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ContractError("epsilon must be positive")
        if not self.delta_floor < self.delta0:
            raise ContractError("delta0 must exceed delta_floor")

    def tolerances(self):
        return {
            "tau_transversal": self.tau,
            "margin": self.margin,
            "lagrangian": self.lagrangian_tol,
        }


class ShiftResult(NamedTuple):
    A_prime: SymmetricOperator
    epsilon: float
    min_gap: float


class MemberRecord(NamedTuple):
    id: int
    sigma_min: float
    residuals: dict


@dataclass(frozen=True, eq=False)
class TransversalityCertificate:
    candidate: Lagrangian
    members: list
    tolerances: dict
    seed: int
    trace: dict = field(default_factory=dict)
    candidate_residuals: dict = field(default_factory=dict)

    @property
    def ok(self):
        tau = self.tolerances["tau_transversal"]
        tol = self.tolerances["lagrangian"]
        res = self.candidate_residuals
        return (
            all(m.sigma_min >= tau for m in self.members)
            and res["columns"] == self.candidate.n
            and res["orthonormality"] <= tol
            and res["isotropy"] <= tol
        )

    @property
    def min_sigma(self):
        return min(m.sigma_min for m in self.members)


def certify(candidate, family, config=None, trace=None, ids=None):
    """Measure ``candidate`` against every member of ``family``."""
    config = config or ComplementConfig()
    ids = list(range(len(family))) if ids is None else list(ids)
    members = [
        MemberRecord(
            int(i),
            is_complementary(L, candidate).sigma_min,
            {k: v for k, v in lagrangian_residuals(L.space, L.basis).items() if k != "columns"},
        )
        for i, L in zip(ids, family)
    ]
    return TransversalityCertificate(
        candidate=candidate,
        members=members,
        tolerances=config.tolerances(),
        seed=int(config.seed),
        trace=dict(trace or {}),
        candidate_residuals=lagrangian_residuals(candidate.space, candidate.basis),
    )


def spectral_shift(A, epsilon):
    """Bounded shift ``A'`` with ``||A'|| <= eps`` and ``A - A'`` invertible.

    ``A'`` is ``eps`` times the spectral projector of ``A`` onto the closed
    band ``[-eps/2, eps/2]``, so every eigenvalue of ``A - A'`` has modulus
    at least ``eps/2``.
    """
    if not epsilon > 0:
        raise ContractError(f"epsilon must be positive, got {epsilon}")
    A = A.A if isinstance(A, SymmetricOperator) else SymmetricOperator(A).A
    eig = numerics.symmetric_eigen(A)
    lam = eig.eigenvalues
    band = np.abs(lam) <= epsilon / 2.0
    g = np.where(band, epsilon, 0.0)
    Q = eig.eigenvectors[:, band]
    if Q.shape[1]:
        Q, _ = np.linalg.qr(Q)
    A_prime = numerics.symmetrize(epsilon * (Q @ Q.T))
    # rounding in Q Q^T can push the norm a few ulps past eps
    norm = numerics.op_norm(A_prime)
    if norm > epsilon:
        A_prime = A_prime * (epsilon / norm)
    min_gap = float(np.min(np.abs(lam - g))) if lam.size else float("inf")
    return ShiftResult(SymmetricOperator(A_prime), float(epsilon), min_gap)


def default_epsilon(A):
    return max(1.0, numerics.op_norm(A) / 2.0)


def _transverse_candidate(L1, L, epsilon=None):
    chart = make_chart(L1.complement(), L1)
    A = chart_encode(chart, L)
    eps = default_epsilon(A.A) if epsilon is None else epsilon
    return chart_decode(chart, spectral_shift(A, eps).A_prime)


def pair_complement_transverse(L1, L, config=None):
    """Common complement of two Lagrangians that meet only in zero.

    Returns
    -------
    (Lagrangian, TransversalityCertificate)
    """
    config = config or ComplementConfig()
    k = intersect(L1, L).dim
    if k:
        raise ContractError(
            f"pair_complement_transverse needs L1 & L = 0 (intersection dimension {k}); "
            "use pair_complement_general"
        )
    candidate = _transverse_candidate(L1, L, config.epsilon)
    return candidate, certify(candidate, [L1, L], config, {"algorithm": "pair-transverse"})


def _general_candidate(L, Lp, epsilon=None):
    split = reduction_split(L, Lp)
    space = L.space
    JS = space.J @ split.S.basis
    if split.S.dim == 0:
        return _transverse_candidate(Lp, L, epsilon)
    if split.S.dim == space.n:
        return L.complement()
    R = _transverse_candidate(split.Lprime_reduced, split.L_reduced, epsilon)
    return Lagrangian(space, numerics.orthonormalize(np.hstack([JS, split.lift(R.basis)])))


def pair_complement_general(L, Lp, config=None):
    """Common complement of an arbitrary pair of Lagrangians.

    With ``S = L & L'`` the answer is ``J(S) (+) R`` where ``R`` is a
    common complement of the reduced pair inside ``(S (+) J S)^perp``.
    """
    config = config or ComplementConfig()
    candidate = _general_candidate(L, Lp, config.epsilon)
    return candidate, certify(candidate, [L, Lp], config, {"algorithm": "pair-general"})


class RefineStep(NamedTuple):
    candidate: Lagrangian
    delta: float | None
    halvings: int


def _refine(candidate, obstacle, family_sofar, delta0, config):
    if is_complementary(candidate, obstacle).sigma_min >= config.margin:
        return RefineStep(candidate, None, 0)
    M = _general_candidate(candidate, obstacle)
    chart = make_chart(M.complement(), M)
    A = chart_encode(chart, candidate).A
    B = A - chart_encode(chart, obstacle).A
    checks = list(family_sofar) + [obstacle]
    delta, halvings = delta0, 0
    while delta >= config.delta_floor:
        shifted = chart_decode(chart, A - spectral_shift(B, delta).A_prime.A)
        if all(is_complementary(F, shifted).sigma_min >= config.margin for F in checks):
            return RefineStep(shifted, delta, halvings)
        delta /= 2.0
        halvings += 1
    raise RefinementError(
        f"delta fell below {config.delta_floor:g} after {halvings} halvings; "
        "check tau/margin against the family's conditioning"
    )


def refine_against(candidate, obstacle, family_sofar, delta0=0.5, config=None):
    """Perturb ``candidate`` until it is also complementary to ``obstacle``.

    The perturbation is a spectral shift of size ``delta`` inside the chart
    over a common complement of ``candidate`` and ``obstacle``; ``delta``
    is halved from ``delta0`` until every member of ``family_sofar`` keeps
    its margin.
    """
    config = config or ComplementConfig()
    return _refine(candidate, obstacle, family_sofar, delta0, config).candidate


def _check_family(family):
    family = list(family)
    if not family:
        raise ContractError("family must be nonempty")
    for L in family[1:]:
        if L.space.dim != family[0].space.dim:
            raise ContractError("family members live in different spaces")
    return family


def family_complement(family, config=None):
    """Common complement of a finite family, certified.

    Starts from ``family[0]^perp`` and refines against the remaining
    members in input order.
    """
    config = config or ComplementConfig()
    family = _check_family(family)
    candidate = family[0].complement()
    refinements, halvings, final_delta = 0, 0, None
    for k in range(1, len(family)):
        step = _refine(candidate, family[k], family[:k], config.delta0, config)
        candidate = step.candidate
        if step.delta is not None:
            refinements += 1
            halvings += step.halvings
            final_delta = step.delta
    trace = {
        "algorithm": "refine",
        "iterations": refinements,
        "halvings": halvings,
        "final_delta": final_delta,
    }
    return certify(candidate, family, config, trace)


def stream_complements(members, config=None):
    """Consume a (possibly endless) iterable, yielding a certificate per prefix."""
    config = config or ComplementConfig()
    prefix, candidate = [], None
    refinements, final_delta = 0, None
    for L in members:
        if candidate is None:
            candidate = L.complement()
        else:
            step = _refine(candidate, L, prefix, config.delta0, config)
            candidate = step.candidate
            if step.delta is not None:
                refinements += 1
                final_delta = step.delta
        prefix.append(L)
        trace = {"algorithm": "stream", "iterations": refinements, "final_delta": final_delta}
        yield certify(candidate, prefix, config, trace)


def randomized_complement(family, seed=0, max_tries=1000, config=None):
    """Sample random chart coordinates until one clears every member.

    Samples live in the chart over ``(family[0]^perp, family[0])``, so the
    first member is always cleared; the rest succeed with probability one.

    Raises
    ------
    SamplingError
        After ``max_tries`` failures, with the per-member worst sigma_min.
    """
    config = config or ComplementConfig()
    family = _check_family(family)
    chart = make_chart(family[0].complement(), family[0])
    rng = np.random.default_rng(seed)
    n = family[0].n
    worst = [np.inf] * len(family)
    for tries in range(1, max_tries + 1):
        candidate = chart_decode(chart, random_symmetric(rng, n))
        sigmas = [is_complementary(L, candidate).sigma_min for L in family]
        if min(sigmas) >= config.margin:
            trace = {"algorithm": "random", "iterations": tries, "final_delta": None}
            cfg = ComplementConfig(**{**config.__dict__, "seed": int(seed)})
            return certify(candidate, family, cfg, trace)
        worst = [min(w, s) for w, s in zip(worst, sigmas)]
    raise SamplingError(f"no common complement after {max_tries} samples", worst)
