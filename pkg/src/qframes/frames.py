"""Frames in H^d: operators, spectra and reconstruction from Gram matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NegativeEigenvalueError, RankError
from .qmat import adjoint, as_hermitian, as_qarray, matmul, norm_inf, psi, qeye, real_trace
from .spectral import ZERO_REL, eigh_q, eigvalsh_q, zero_threshold

__all__ = [
    "Frame",
    "SpectrumSpec",
    "NormSpec",
    "analysis",
    "synthesis",
    "frame_operator",
    "gram",
    "frame_spectrum",
    "frame_bounds",
    "is_tight",
    "is_parseval",
    "gram_to_frame",
    "column_norms_sq",
]


def _rank_ok(F: np.ndarray) -> bool:
    d = F.shape[0]
    if F.shape[1] < d:
        return False
    # singular values of the embedding are those of F, each doubled
    sv = np.linalg.svd(psi(F), compute_uv=False)
    return sv[2 * d - 1] > ZERO_REL * (1.0 + sv[0])


@dataclass(frozen=True, eq=False)
class Frame:
    """``N`` vectors spanning ``H^d``, stored as the columns of a ``d x N`` matrix.

    Construction checks the spanning condition; :meth:`unchecked` skips it.
    """

    F: np.ndarray

    def __post_init__(self):
        F = np.array(as_qarray(self.F, 3), copy=True)
        if not _rank_ok(F):
            raise RankError(f"columns do not span H^{F.shape[0]}")
        F.setflags(write=False)
        object.__setattr__(self, "F", F)

    @classmethod
    def unchecked(cls, F) -> "Frame":
        obj = object.__new__(cls)
        arr = np.array(as_qarray(F, 3), copy=True)
        arr.setflags(write=False)
        object.__setattr__(obj, "F", arr)
        return obj

    @property
    def d(self) -> int:
        return self.F.shape[0]

    @property
    def N(self) -> int:
        return self.F.shape[1]

    def column(self, i: int) -> np.ndarray:
        return self.F[:, i].copy()

    def norms_sq(self) -> np.ndarray:
        return column_norms_sq(self.F)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "N": self.N,
            "columns": self.F.transpose(1, 0, 2).tolist(),
        }

    @classmethod
    def from_json_dict(cls, obj, check: bool = True) -> "Frame":
        d, N = int(obj["d"]), int(obj["N"])
        cols = np.asarray(obj["columns"], dtype=np.float64)
        if cols.shape != (N, d, 4):
            raise DimensionError(f"columns of shape {cols.shape} do not match d={d}, N={N}")
        F = np.ascontiguousarray(cols.transpose(1, 0, 2))
        return cls(F) if check else cls.unchecked(F)


def _positive_sequence(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise ValueError(f"{what} is empty")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"{what} must contain strictly positive finite reals")
    return arr


@dataclass(frozen=True, eq=False)
class SpectrumSpec:
    """A frame spectrum; stored sorted non-increasing."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.sort(_positive_sequence(self.values, "spectrum"))[::-1].copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def d(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def tolist(self) -> list:
        return self.values.tolist()


@dataclass(frozen=True, eq=False)
class NormSpec:
    """Squared frame-vector norms.

    ``original`` keeps the caller's order, ``values`` is sorted non-increasing
    and ``perm`` satisfies ``values == original[perm]``.
    """

    original: np.ndarray
    values: np.ndarray = field(init=False)
    perm: np.ndarray = field(init=False)

    def __post_init__(self):
        orig = _positive_sequence(self.original, "norms").copy()
        perm = np.argsort(-orig, kind="stable")
        vals = orig[perm]
        for a in (orig, perm, vals):
            a.setflags(write=False)
        object.__setattr__(self, "original", orig)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "perm", perm)

    @property
    def N(self) -> int:
        return len(self.original)

    def __len__(self):
        return len(self.original)


def as_spectrum(lam) -> SpectrumSpec:
    return lam if isinstance(lam, SpectrumSpec) else SpectrumSpec(lam)


def as_norms(r) -> NormSpec:
    return r if isinstance(r, NormSpec) else NormSpec(r)


def _matrix(Fr) -> np.ndarray:
    return Fr.F if isinstance(Fr, Frame) else as_qarray(Fr, 3)


def column_norms_sq(F) -> np.ndarray:
    F = _matrix(F)
    return np.sum(F * F, axis=(0, 2))


def analysis(Fr, v) -> np.ndarray:
    """``F* v``; entry ``j`` is ``<v, f_j>``."""
    F = _matrix(Fr)
    v = as_qarray(v).reshape(-1, 4)
    if v.shape[0] != F.shape[0]:
        raise DimensionError(f"vector of length {v.shape[0]} for a frame in H^{F.shape[0]}")
    return matmul(adjoint(F), v[:, None, :])[:, 0, :]


def synthesis(Fr, w) -> np.ndarray:
    """``F w = sum_i f_i w_i``."""
    F = _matrix(Fr)
    w = as_qarray(w).reshape(-1, 4)
    if w.shape[0] != F.shape[1]:
        raise DimensionError(f"coefficient vector of length {w.shape[0]} for {F.shape[1]} frame vectors")
    return matmul(F, w[:, None, :])[:, 0, :]


def frame_operator(Fr) -> np.ndarray:
    F = _matrix(Fr)
    return as_hermitian(matmul(F, adjoint(F)), tol=np.inf)


def gram(Fr) -> np.ndarray:
    F = _matrix(Fr)
    return as_hermitian(matmul(adjoint(F), F), tol=np.inf)


def frame_spectrum(Fr) -> SpectrumSpec:
    """Eigenvalues of ``F F*``, non-increasing.

    Negative rounding dust is clamped to zero first.

    Raises
    ------
    RankError
        If some eigenvalue is at or below the zero threshold.
    """
    vals = np.clip(eigvalsh_q(frame_operator(Fr)), 0.0, None)
    if vals[-1] <= zero_threshold(vals):
        raise RankError("frame operator is singular: the vectors do not span")
    return SpectrumSpec(vals)


def frame_bounds(Fr) -> tuple[float, float]:
    """Optimal lower and upper frame bounds."""
    vals = frame_spectrum(Fr).values
    return float(vals[-1]), float(vals[0])


def is_tight(Fr, tol: float = 1e-9) -> bool:
    S = frame_operator(Fr)
    d = S.shape[0]
    A = real_trace(S) / d
    return norm_inf(S - A * qeye(d)) <= tol


def is_parseval(Fr, tol: float = 1e-9) -> bool:
    S = frame_operator(Fr)
    return norm_inf(S - qeye(S.shape[0])) <= tol


def gram_to_frame(M, d: int, check: bool = True) -> Frame:
    """A ``d x N`` frame whose Gram matrix is ``M``.

    With ``M = U diag(mu) U*`` the result is ``diag(sqrt(mu_1..d)) U[:, :d]*``.
    It is unique up to left multiplication by ``Sp(d)``.

    Raises
    ------
    NegativeEigenvalueError
        If ``M`` has an eigenvalue below ``-1e-9 (1 + |mu|_max)``.
    RankError
        If ``M`` does not have exactly ``d`` eigenvalues above the zero
        threshold.
    """
    eig = eigh_q(M)
    mu = eig.eigenvalues
    thr = zero_threshold(mu)
    if mu[-1] < -thr:
        raise NegativeEigenvalueError(f"Gram matrix has eigenvalue {mu[-1]:.3e} < 0")
    rank = int(np.sum(mu > thr))
    if check and rank != d:
        raise RankError(f"Gram matrix has rank {rank}, expected {d}")
    top = np.sqrt(np.clip(mu[:d], 0.0, None))
    F = adjoint(eig.U[:, :d]) * top[:, None, None]
    return Frame(F) if check else Frame.unchecked(F)
