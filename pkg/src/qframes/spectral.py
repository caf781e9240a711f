"""Hermitian eigendecomposition and SVD of quaternionic matrices.

Both go through the complex embedding.  The embedding of a Hermitian
``m x m`` matrix is a complex Hermitian ``2m x 2m`` matrix whose spectrum is
the quaternionic spectrum with every value repeated twice.  A complex
eigenvector ``[p; q]`` of the embedding gives the quaternionic eigenvector
``p - conj(q) j`` for the same eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import PairingError
from .qmat import adjoint, as_hermitian, as_qarray, from_complex_parts, matmul, psi, qdiag

PAIR_TOL = 1e-8
ZERO_REL = 1e-9


@dataclass(frozen=True)
class EigenDecomposition:
    """``H = U diag(eigenvalues) U*`` with eigenvalues non-increasing."""

    eigenvalues: np.ndarray
    U: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return matmul(matmul(self.U, qdiag(self.eigenvalues)), adjoint(self.U))


@dataclass(frozen=True)
class SVDecomposition:
    """``F = U Sigma V*`` with singular values non-increasing."""

    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray

    def sigma(self) -> np.ndarray:
        d, N = self.U.shape[0], self.V.shape[0]
        S = np.zeros((d, N, 4))
        k = len(self.singular_values)
        S[np.arange(k), np.arange(k), 0] = self.singular_values
        return S

    def reconstruct(self) -> np.ndarray:
        return matmul(matmul(self.U, self.sigma()), adjoint(self.V))


def zero_threshold(values) -> float:
    """Values at or below this count as zero for rank decisions."""
    values = np.asarray(values, dtype=np.float64)
    top = float(np.max(np.abs(values))) if values.size else 0.0
    return ZERO_REL * (top + 1.0)


def _complex_to_quat_vectors(V) -> np.ndarray:
    """Columns ``[p; q]`` of a ``2m x n`` complex array to ``m x n`` quaternion columns."""
    m = V.shape[0] // 2
    p, q = V[:m], V[m:]
    return from_complex_parts(p, -q.conj())


def _pivoted_basis(cands: np.ndarray, k: int) -> np.ndarray:
    """Pick ``k`` orthonormal quaternion columns spanning the candidates' span.

    Greedy: at each step keep the candidate with the largest residual after
    projecting out the columns already chosen.
    """
    m = cands.shape[0]
    resid = cands.copy()
    chosen = np.zeros((m, k, 4))
    for t in range(k):
        norms = np.sqrt(np.sum(resid * resid, axis=(0, 2)))
        best = int(np.argmax(norms))
        q = resid[:, best] / norms[best]
        chosen[:, t] = q
        # resid <- resid - q <resid, q>
        coef = kernels.qmul(kernels.qconj(q)[:, None, :], resid).sum(axis=0)
        resid = resid - kernels.qmul(q[:, None, :], coef[None, :, :])
    return chosen


def eigh_q(H, *, hermitian_tol: float = 1e-12) -> EigenDecomposition:
    """Spectral decomposition of a quaternionic Hermitian matrix.

    Eigenvalues come back sorted non-increasing and ``U`` is symplectic.
    Each eigenvector is defined only up to a right unit-quaternion factor (and
    up to a symplectic change of basis inside a repeated eigenvalue).

    Raises
    ------
    PairingError
        If the doubled spectrum of the embedding does not split into equal
        pairs within ``1e-8`` (relative to ``max(1, |H|)``).
    """
    H = as_hermitian(H, hermitian_tol)
    m = H.shape[0]
    w, V = np.linalg.eigh(psi(H))
    w = w[::-1]
    V = V[:, ::-1]
    scale = max(1.0, float(np.max(np.abs(w))))
    gaps = np.abs(w[0::2] - w[1::2])
    if gaps.size and gaps.max() > PAIR_TOL * scale:
        raise PairingError(f"embedded eigenvalues fail to pair (gap {gaps.max():.3e})")
    vals = 0.5 * (w[0::2] + w[1::2])

    # clusters of (numerically) equal quaternionic eigenvalues
    bounds = [0]
    for t in range(1, m):
        if vals[bounds[-1]] - vals[t] > PAIR_TOL * scale:
            bounds.append(t)
    bounds.append(m)

    U = np.zeros((m, m, 4))
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        cands = _complex_to_quat_vectors(V[:, 2 * lo:2 * hi])
        if hi - lo == 1:
            v = cands[:, 0]
            U[:, lo] = v / np.sqrt(np.sum(v * v))
        else:
            U[:, lo:hi] = _pivoted_basis(cands, hi - lo)
    U, _ = kernels.gram_schmidt(np.ascontiguousarray(U))
    return EigenDecomposition(eigenvalues=vals, U=U)


def eigvalsh_q(H) -> np.ndarray:
    """Eigenvalues only, non-increasing."""
    H = as_hermitian(H)
    w = np.linalg.eigvalsh(psi(H))[::-1]
    return 0.5 * (w[0::2] + w[1::2])


def complete_basis(Q: np.ndarray, n: int) -> np.ndarray:
    """Extend ``k`` orthonormal columns of length ``n`` to a symplectic ``n x n``."""
    Q = as_qarray(Q, 3)
    k = Q.shape[1]
    if k == n:
        return Q.copy()
    eye = np.zeros((n, n, 4))
    eye[np.arange(n), np.arange(n), 0] = 1.0
    resid = eye.copy()
    for t in range(k):
        q = Q[:, t]
        coef = kernels.qmul(kernels.qconj(q)[:, None, :], resid).sum(axis=0)
        resid = resid - kernels.qmul(q[:, None, :], coef[None, :, :])
    extra = _pivoted_basis(resid, n - k)
    out, _ = kernels.gram_schmidt(np.ascontiguousarray(np.concatenate([Q, extra], axis=1)))
    return out


def svd_q(F) -> SVDecomposition:
    """Singular value decomposition ``F = U Sigma V*`` of a ``d x N`` matrix.

    Computed from ``eigh_q(F F*)``: ``U`` holds its eigenvectors, the singular
    values are ``|F* u_i|`` (the square roots of its eigenvalues), and the
    first columns of ``V`` are ``F* u_i / sigma_i``.  Values below
    ``1e-9 * (sigma_max + 1)`` are set to zero.
    """
    F = as_qarray(F, 3)
    d, N = F.shape[0], F.shape[1]
    if d > N:
        t = svd_q(adjoint(F))
        return SVDecomposition(U=t.V, singular_values=t.singular_values, V=t.U)
    eig = eigh_q(matmul(F, adjoint(F)))
    # |F* u_i| is accurate for small singular values, sqrt(eigenvalue) is not
    G = matmul(adjoint(F), eig.U)
    sv = np.sqrt(np.sum(G * G, axis=(0, 2)))
    order = np.argsort(-sv, kind="stable")
    sv, G, U = sv[order], G[:, order], np.ascontiguousarray(eig.U[:, order])
    thr = ZERO_REL * (float(sv[0]) + 1.0)
    rank = int(np.sum(sv > thr))
    sv[rank:] = 0.0
    if rank:
        Vr = np.ascontiguousarray(G[:, :rank] / sv[None, :rank, None])
        Vr, _ = kernels.gram_schmidt(Vr)
    else:
        Vr = np.zeros((N, 0, 4))
    V = complete_basis(Vr, N)
    return SVDecomposition(U=U, singular_values=sv, V=V)
