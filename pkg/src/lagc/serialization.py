"""JSON wire formats.

Floats are written with Python's shortest round-trip repr, so a file read
back reproduces the exact same doubles.
"""

import json

import numpy as np

from .chart import SymmetricOperator
from .engine import MemberRecord, TransversalityCertificate
from .errors import ContractError
from .lagrangian import Lagrangian
from .opmodel import DiscreteMeasureSpace, Multiplier
from .symplectic import RawSymplecticForm, SymplecticSpace


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)) and not isinstance(obj, bool):
        return int(obj)
    return obj


def dumps(obj):
    return json.dumps(_plain(obj), indent=2, allow_nan=False) + "\n"


def _matrix(data, name):
    try:
        M = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ContractError(f"{name} is not a numeric matrix") from exc
    if M.ndim != 2:
        raise ContractError(f"{name} must be a 2-D array")
    return M


def raw_form_from_json(d):
    H = _matrix(d["H"], "H")
    if "dim" in d and int(d["dim"]) != H.shape[0]:
        raise ContractError("dim does not match H")
    gram = _matrix(d["gram"], "gram") if d.get("gram") is not None else None
    return RawSymplecticForm(H, gram)


def raw_form_to_json(raw):
    return {"dim": raw.dim, "H": raw.H, "gram": raw.gram}


def lagrangian_to_json(L):
    return {"dim": L.space.dim, "basis": L.basis}


def basis_from_json(d):
    B = _matrix(d["basis"], "basis")
    if "dim" in d and int(d["dim"]) != B.shape[0]:
        raise ContractError(f"dim {d['dim']} does not match basis rows {B.shape[0]}")
    return B


def lagrangian_from_json(d, space):
    B = basis_from_json(d)
    if B.shape[0] != space.dim:
        raise ContractError(f"basis has {B.shape[0]} rows, space has dimension {space.dim}")
    return Lagrangian(space, B)


def operator_to_json(op):
    return {"n": op.n, "A": op.A}


def operator_from_json(d):
    A = _matrix(d["A"], "A")
    if "n" in d and int(d["n"]) != A.shape[0]:
        raise ContractError("n does not match A")
    return SymmetricOperator(A)


def multiplier_to_json(mult):
    return {"weights": mult.space.weights, "f": mult.values}


def multiplier_from_json(d):
    return Multiplier(DiscreteMeasureSpace(d["weights"]), d["f"])


def space_to_json(space):
    return {"dim": space.dim, "J": space.J, "gram": space.gram}


def certificate_to_json(cert):
    return {
        "tolerances": cert.tolerances,
        "seed": cert.seed,
        "members": [
            {"id": m.id, "sigma_min": m.sigma_min, "residuals": m.residuals}
            for m in cert.members
        ],
        "candidate": lagrangian_to_json(cert.candidate),
        "candidate_residuals": cert.candidate_residuals,
        "trace": cert.trace,
    }


def certificate_from_json(d, space):
    """Rebuild a certificate object; the candidate is re-validated on load."""
    members = [MemberRecord(int(m["id"]), float(m["sigma_min"]), dict(m.get("residuals", {})))
               for m in d["members"]]
    return TransversalityCertificate(
        candidate=lagrangian_from_json(d["candidate"], space),
        members=members,
        tolerances=dict(d["tolerances"]),
        seed=int(d["seed"]),
        trace=dict(d.get("trace", {})),
        candidate_residuals=dict(d.get("candidate_residuals", {})),
    )


__all__ = [
    "SymplecticSpace",
    "certificate_from_json",
    "certificate_to_json",
    "dumps",
    "lagrangian_from_json",
    "lagrangian_to_json",
    "multiplier_from_json",
    "multiplier_to_json",
    "operator_from_json",
    "operator_to_json",
    "raw_form_from_json",
    "raw_form_to_json",
]
