"""Existence test for frames with prescribed spectrum and norms.

A frame with frame spectrum ``lam`` (length ``d``) and squared norms ``r``
(length ``N``) exists exactly when ``r`` lies in the convex hull of all
permutations of ``lam`` padded with ``N - d`` zeros.  :func:`is_admissible`
decides this with prefix sums; :func:`hull_membership_oracle` decides it from
scratch with a linear program over the enumerated permutations and shares no
code with it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import SizeError
from .frames import as_norms, as_spectrum
from .qmat import as_hermitian, qeye, real_trace

DEFAULT_TOL = 1e-10
ORACLE_MAX_N = 8


@dataclass(frozen=True)
class AdmissibilityCertificate:
    admissible: bool
    trace_gap: float
    first_violated_k: int | None
    partial_sums_r: tuple
    partial_sums_lambda: tuple
    tol: float

    def to_json_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "trace_gap": self.trace_gap,
            "first_violated_k": self.first_violated_k,
            "partial_sums": {
                "r": list(self.partial_sums_r),
                "lambda": list(self.partial_sums_lambda),
            },
            "tol": self.tol,
        }


def pad_spectrum(lam, N: int) -> np.ndarray:
    """``lam`` followed by ``N - d`` zeros."""
    lam = np.asarray(getattr(lam, "values", lam), dtype=np.float64).reshape(-1)
    if N < len(lam):
        raise ValueError(f"cannot pad a spectrum of length {len(lam)} to N={N}")
    return np.concatenate([lam, np.zeros(N - len(lam))])


def is_admissible(lam, r, tol: float = DEFAULT_TOL) -> AdmissibilityCertificate:
    """Prefix-sum test on sorted data.

    Admissible iff ``|sum r - sum lam| <= tol (1 + sum lam)`` and, for
    ``k = 1..d``, ``sum_{i<=k} r_i <= sum_{i<=k} lam_i + tol (1 + sum lam)``.
    Equality in a prefix sum is admissible.  Inputs may be unsorted.
    """
    lam = as_spectrum(lam).values
    r = as_norms(r).values
    d, N = len(lam), len(r)
    total = float(lam.sum())
    slack = tol * (1.0 + total)
    if N < d:
        # fewer vectors than dimensions can never span
        cr = np.cumsum(r)
        cl = np.cumsum(lam)
        return AdmissibilityCertificate(
            admissible=False,
            trace_gap=float(r.sum() - total),
            first_violated_k=None,
            partial_sums_r=tuple(cr.tolist()),
            partial_sums_lambda=tuple(cl.tolist()),
            tol=tol,
        )
    cr = np.cumsum(r)
    cl = np.cumsum(pad_spectrum(lam, N))
    gap = float(cr[-1] - total)
    violated = None
    for k in range(1, d + 1):
        if cr[k - 1] > cl[k - 1] + slack:
            violated = k
            break
    ok = abs(gap) <= slack and violated is None
    return AdmissibilityCertificate(
        admissible=bool(ok),
        trace_gap=gap,
        first_violated_k=violated,
        partial_sums_r=tuple(cr.tolist()),
        partial_sums_lambda=tuple(cl.tolist()),
        tol=tol,
    )


def hull_membership_oracle(lambda_padded, r, tol: float = 1e-9) -> bool:
    """Is ``r`` a convex combination of the permutations of ``lambda_padded``?

    Enumerates the distinct permutations (at most ``8!``) and solves the
    feasibility LP ``P^T w = r, sum w = 1, w >= 0`` with HiGHS.  A reported
    solution is re-checked against ``tol (1 + |r|_1)``.
    """
    lp = np.asarray(lambda_padded, dtype=np.float64).reshape(-1)
    r = np.asarray(r, dtype=np.float64).reshape(-1)
    N = len(lp)
    if len(r) != N:
        raise ValueError(f"length mismatch: {N} vs {len(r)}")
    if N > ORACLE_MAX_N:
        raise SizeError(f"N={N} exceeds the enumeration limit {ORACLE_MAX_N}")
    verts = np.array(sorted(set(itertools.permutations(lp.tolist()))))
    A_eq = np.vstack([verts.T, np.ones((1, len(verts)))])
    b_eq = np.concatenate([r, [1.0]])
    res = linprog(
        np.zeros(len(verts)),
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=(0, None),
        method="highs",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status != 0:
        return False
    w = np.clip(res.x, 0.0, None)
    w = w / w.sum()
    resid = float(np.max(np.abs(verts.T @ w - r)))
    return resid <= tol * (1.0 + float(np.abs(r).sum()))


def diag_of(H) -> np.ndarray:
    """The real diagonal of a Hermitian matrix."""
    H = as_hermitian(H)
    return np.diagonal(H[..., 0]).copy()


def recenter(B) -> np.ndarray:
    """``B - (tr B / m) I``: move a Hermitian matrix into the traceless space."""
    B = as_hermitian(B)
    m = B.shape[0]
    return B - (real_trace(B) / m) * qeye(m)


def recenter_diag(x, sigma: float | None = None) -> np.ndarray:
    """Translate ``x`` by ``-(sigma/m, ..., sigma/m)``; ``sigma`` defaults to ``sum x``."""
    x = np.asarray(x, dtype=np.float64)
    s = float(x.sum()) if sigma is None else float(sigma)
    return x - s / len(x)
