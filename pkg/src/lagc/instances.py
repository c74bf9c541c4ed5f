"""Instance files and the family generators behind ``lagc gen``."""

import json
from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .chart import chart_decode, make_chart
from .errors import ContractError
from .lagrangian import Lagrangian, is_lagrangian, random_lagrangian
from .serialization import basis_from_json, dumps, raw_form_from_json, raw_form_to_json
from .symplectic import normalize, standard_space, to_standard

MODES = ("random", "nested", "intersecting")
# bases orthonormal to this level are kept byte-for-byte
KEEP_BASIS_TOL = 1e-12


@dataclass(eq=False)
class InstanceFile:
    """A family of Lagrangians plus the space they live in.

    ``space`` is the description as written (``{"kind": "standard", "n": n}``
    or a raw form); ``family`` holds the members in standard coordinates.
    """

    space: dict
    family: list
    raw_bases: list
    meta: dict = field(default_factory=dict)

    @property
    def std_space(self):
        return self.family[0].space

    def to_json(self):
        return {
            "space": self.space,
            "lagrangians": [{"dim": B.shape[0], "basis": B} for B in self.raw_bases],
            "meta": self.meta,
        }


def _ingest_space(desc):
    kind = desc.get("kind", "standard")
    if kind == "standard":
        n = int(desc["n"])
        return standard_space(n), np.eye(2 * n)
    if kind == "raw":
        normalized = normalize(raw_form_from_json(desc))
        return to_standard(normalized)
    raise ContractError(f"unknown space kind {kind!r}")


def instance_from_json(d):
    try:
        desc = d["space"]
        entries = d["lagrangians"]
    except (KeyError, TypeError) as exc:
        raise ContractError(f"instance is missing field {exc}") from exc
    if not entries:
        raise ContractError("instance lists no Lagrangians")
    space, T = _ingest_space(desc)
    family, raw = [], []
    for i, entry in enumerate(entries):
        B = basis_from_json(entry)
        if B.shape[0] != space.dim:
            raise ContractError(f"member {i}: basis has {B.shape[0]} rows, expected {space.dim}")
        std = T @ B
        k = std.shape[1]
        if k != space.n or numerics.op_norm(std.T @ std - np.eye(k)) > KEEP_BASIS_TOL:
            std = numerics.orthonormalize(std)
        check = is_lagrangian(space, std)
        if not check.ok:
            raise ContractError(f"member {i} is not Lagrangian: {check.residuals}")
        family.append(Lagrangian(space, std))
        raw.append(B)
    return InstanceFile(dict(desc), family, raw, dict(d.get("meta", {})))


def load_instance(path):
    with open(path) as fh:
        return instance_from_json(json.load(fh))


def save_instance(inst, path):
    with open(path, "w") as fh:
        fh.write(dumps(inst.to_json()))


def standard_instance(family, meta=None):
    n = family[0].n
    return InstanceFile({"kind": "standard", "n": n}, list(family),
                        [L.basis for L in family], dict(meta or {}))


def raw_instance(raw, bases, meta=None):
    """Instance over a raw form; ``bases`` are in the raw coordinates."""
    desc = json.loads(dumps({"kind": "raw", **raw_form_to_json(raw)}))
    entries = [{"basis": np.asarray(B, dtype=float).tolist()} for B in bases]
    return instance_from_json({"space": desc, "lagrangians": entries, "meta": dict(meta or {})})


def _sub_frame(rng, L, d):
    # random split of L's basis into a d-dim part and its complement in L
    Q = numerics.orthonormalize(rng.standard_normal((L.n, L.n)))
    return L.basis @ Q[:, :d], L.basis @ Q[:, d:]


def sharing_lagrangian(rng, L, d):
    """Random Lagrangian meeting ``L`` in a random ``d``-dimensional subspace."""
    space = L.space
    S, rest = _sub_frame(rng, L, d)
    W = np.hstack([rest, space.J @ rest])
    m = L.n - d
    R = random_lagrangian(standard_space(m), rng).basis
    return Lagrangian(space, numerics.orthonormalize(np.hstack([S, W @ R])))


def low_rank_step(rng, L, rank):
    """Graph of a random rank-``rank`` symmetric matrix over ``L``.

    In the chart ``(L, J L)`` the new member sits at coordinate ``E`` and
    ``L`` at zero, so the two meet in ``ker E`` of dimension ``n - rank``.
    """
    n = L.n
    Q = numerics.orthonormalize(rng.standard_normal((n, n)))[:, :rank]
    lam = rng.standard_normal(rank)
    lam = np.sign(lam) * (0.25 + np.abs(lam))
    E = numerics.symmetrize((Q * lam) @ Q.T)
    return chart_decode(make_chart(L, L.complement()), E)


def generate_family(n, count, mode="random", seed=0):
    """Deterministic family of ``count`` Lagrangians in the standard ``2n`` space.

    ``random`` draws independent members; ``intersecting`` makes each
    member share a subspace of dimension ``1..n-1`` with its predecessor;
    ``nested`` moves each member by a low-rank chart perturbation of the
    previous one, so consecutive members also intersect.
    """
    n, count = int(n), int(count)
    if n < 1:
        raise ContractError(f"dimension n must be >= 1, got {n}")
    if count < 1:
        raise ContractError(f"count must be >= 1, got {count}")
    if mode not in MODES:
        raise ContractError(f"mode must be one of {MODES}, got {mode!r}")
    rng = np.random.default_rng(seed)
    space = standard_space(n)
    family = [random_lagrangian(space, rng)]
    while len(family) < count:
        prev = family[-1]
        if mode == "random" or (mode == "intersecting" and n == 1):
            family.append(random_lagrangian(space, rng))
        elif mode == "intersecting":
            family.append(sharing_lagrangian(rng, prev, int(rng.integers(1, n))))
        else:
            rank = int(rng.integers(1, n)) if n > 1 else 1
            family.append(low_rank_step(rng, prev, rank))
    return family


