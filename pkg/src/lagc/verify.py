"""Independent re-checking of certificates against instance files.

Nothing in the certificate is trusted: the candidate basis is read raw
(no re-orthonormalization) and every singular value is recomputed.
"""

from typing import NamedTuple

import numpy as np

from . import numerics
from .lagrangian import lagrangian_residuals

SIGMA_AGREEMENT = 1e-9


class Verdict(NamedTuple):
    ok: bool
    reasons: list
    sigmas: list


def verify_certificate(cert, instance):
    """Recompute a certificate (parsed JSON dict) from an instance.

    Returns
    -------
    Verdict
        ``ok`` is true iff the candidate is Lagrangian at the stated
        tolerance, the member list matches the instance, and every
        recomputed ``sigma_min`` meets ``tau_transversal`` and agrees with
        the reported value.
    """
    reasons = []
    space = instance.std_space
    try:
        tol = cert["tolerances"]
        tau = float(tol["tau_transversal"])
        lag_tol = float(tol["lagrangian"])
        B = np.array(cert["candidate"]["basis"], dtype=float)
        members = list(cert["members"])
    except (KeyError, TypeError, ValueError) as exc:
        return Verdict(False, [f"malformed certificate: {exc!r}"], [])
    if B.ndim != 2 or B.shape != (space.dim, space.n) or not np.all(np.isfinite(B)):
        return Verdict(False, [f"candidate basis has shape {B.shape}, expected {(space.dim, space.n)}"], [])
    res = lagrangian_residuals(space, B)
    if res["orthonormality"] > lag_tol or res["isotropy"] > lag_tol:
        reasons.append(f"candidate is not Lagrangian: {res}")
    ids = [m.get("id") for m in members]
    if ids != list(range(len(instance.family))):
        reasons.append(f"member ids {ids} do not match the {len(instance.family)} instance members")
        return Verdict(False, reasons, [])
    sigmas = []
    for m, L in zip(members, instance.family):
        sigma = numerics.min_singular_value(np.hstack([L.basis, B]))
        sigmas.append(sigma)
        if sigma < tau:
            reasons.append(f"member {m['id']}: sigma_min {sigma:.3e} below tau {tau:.1e}")
        reported = float(m.get("sigma_min", np.nan))
        if not abs(reported - sigma) <= SIGMA_AGREEMENT * max(1.0, sigma):
            reasons.append(f"member {m['id']}: reported sigma_min {reported!r} != recomputed {sigma!r}")
    return Verdict(not reasons, reasons, sigmas)
