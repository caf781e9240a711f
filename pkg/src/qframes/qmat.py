"""Dense quaternionic matrices.

A quaternionic ``m x k`` matrix is a float64 array of shape ``(m, k, 4)``;
column vectors in ``H^n`` are arrays of shape ``(n, 4)``.  Scalars act on the
right of vectors, so left matrix multiplication is H-linear.

The complex embedding sends ``Z + W j`` (``Z, W`` complex) to the block
matrix ``[[Z, W], [-conj(W), conj(Z)]]``.  It is multiplicative, respects
adjoints, and is what the spectral routines run on.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DimensionError, NotHermitianError, StructureError
from .quaternion import Quaternion

HERMITIAN_TOL = 1e-12
STRUCTURE_TOL = 1e-10


def as_qarray(A, ndim: int | None = None) -> np.ndarray:
    """Return ``A`` as a C-contiguous float64 quaternion array."""
    arr = np.ascontiguousarray(A, dtype=np.float64)
    if arr.ndim == 0 or arr.shape[-1] != 4:
        raise DimensionError(f"expected trailing axis of length 4, got shape {arr.shape}")
    if ndim is not None and arr.ndim != ndim:
        raise DimensionError(f"expected a {ndim - 1}-index quaternion array, got shape {arr.shape}")
    return arr


def qzeros(m: int, k: int) -> np.ndarray:
    return np.zeros((m, k, 4))


def qeye(m: int) -> np.ndarray:
    out = np.zeros((m, m, 4))
    out[np.arange(m), np.arange(m), 0] = 1.0
    return out


def from_real(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    out = np.zeros(M.shape + (4,))
    out[..., 0] = M
    return out


def qdiag(values) -> np.ndarray:
    """Square matrix with the given real (or quaternion) diagonal."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        return from_real(np.diag(values))
    m = values.shape[0]
    out = np.zeros((m, m, 4))
    out[np.arange(m), np.arange(m)] = values
    return out


def from_complex_parts(Z, W) -> np.ndarray:
    """The quaternionic matrix ``Z + W j``."""
    Z = np.asarray(Z, dtype=np.complex128)
    W = np.asarray(W, dtype=np.complex128)
    return np.ascontiguousarray(np.stack([Z.real, Z.imag, W.real, W.imag], axis=-1))


def to_complex_parts(A):
    A = as_qarray(A)
    return A[..., 0] + 1j * A[..., 1], A[..., 2] + 1j * A[..., 3]


def matmul(A, B) -> np.ndarray:
    A = as_qarray(A, 3)
    B = as_qarray(B, 3)
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape[:2]} by {B.shape[:2]}")
    return kernels.qmatmul(A, B)


def adjoint(A) -> np.ndarray:
    """Conjugate transpose."""
    A = as_qarray(A, 3)
    out = np.array(A.transpose(1, 0, 2), order="C", copy=True)
    out[..., 1:] *= -1.0
    return out


def inner_product(v, w) -> Quaternion:
    """``<v, w> = sum_j conj(w_j) v_j``; H-linear in ``v`` from the right."""
    v = as_qarray(v).reshape(-1, 4)
    w = as_qarray(w).reshape(-1, 4)
    if v.shape != w.shape:
        raise DimensionError(f"vectors of lengths {v.shape[0]} and {w.shape[0]}")
    return Quaternion.from_array(kernels.qmul(kernels.qconj(w), v).sum(axis=0))


def vector_norm(v) -> float:
    v = as_qarray(v)
    return float(np.sqrt(np.sum(v * v)))


def trace(A) -> Quaternion:
    A = as_qarray(A, 3)
    if A.shape[0] != A.shape[1]:
        raise DimensionError("trace of a non-square matrix")
    return Quaternion.from_array(np.einsum("iit->t", A))


def real_trace(A) -> float:
    A = as_qarray(A, 3)
    if A.shape[0] != A.shape[1]:
        raise DimensionError("trace of a non-square matrix")
    return float(np.trace(A[..., 0]))


def frobenius(A, B) -> Quaternion:
    """Frobenius inner product ``tr(B* A)``."""
    A = as_qarray(A, 3)
    B = as_qarray(B, 3)
    if A.shape != B.shape:
        raise DimensionError(f"shapes {A.shape[:2]} and {B.shape[:2]} differ")
    return trace(matmul(adjoint(B), A))


def norm_inf(A) -> float:
    """Largest entry modulus."""
    A = np.asarray(A, dtype=np.float64)
    if A.size == 0:
        return 0.0
    return float(np.sqrt(np.max(np.sum(A * A, axis=-1))))


# --------------------------------------------------------------------------
# complex embedding

def psi(A) -> np.ndarray:
    """Complex embedding of an ``m x k`` quaternionic matrix (``2m x 2k``)."""
    A = as_qarray(A, 3)
    Z, W = to_complex_parts(A)
    return np.block([[Z, W], [-W.conj(), Z.conj()]])


def unpsi(M, tol: float = STRUCTURE_TOL, check: bool = True) -> np.ndarray:
    """Inverse of :func:`psi` on its image; averages the redundant blocks.

    The block relation is checked against ``tol * max(1, |M|_max)``.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] % 2 or M.shape[1] % 2:
        raise StructureError(f"shape {M.shape} is not a complex embedding")
    m, k = M.shape[0] // 2, M.shape[1] // 2
    Z1, W1 = M[:m, :k], M[:m, k:]
    W2, Z2 = M[m:, :k], M[m:, k:]
    if check:
        scale = max(1.0, float(np.max(np.abs(M))) if M.size else 0.0)
        err = max(float(np.max(np.abs(Z1 - Z2.conj()))), float(np.max(np.abs(W1 + W2.conj()))))
        if err > tol * scale:
            raise StructureError(f"block relation violated by {err:.3e}")
    return from_complex_parts((Z1 + Z2.conj()) / 2, (W1 - W2.conj()) / 2)


def embed_complex(A) -> np.ndarray:
    A = as_qarray(A, 3)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"embedding needs a square matrix, got {A.shape[:2]}")
    return psi(A)


def unembed_complex(M, tol: float = STRUCTURE_TOL) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise StructureError(f"expected a square complex matrix, got shape {M.shape}")
    return unpsi(M, tol)


# --------------------------------------------------------------------------
# predicates and Hermitian cleanup

def is_symplectic(U, tol: float = 1e-10) -> bool:
    U = as_qarray(U, 3)
    if U.shape[0] != U.shape[1]:
        return False
    return norm_inf(matmul(adjoint(U), U) - qeye(U.shape[0])) <= tol


def hermitian_defect(A) -> float:
    A = as_qarray(A, 3)
    return norm_inf(A - adjoint(A))


def is_hermitian(A, tol: float = HERMITIAN_TOL) -> bool:
    A = as_qarray(A, 3)
    return A.shape[0] == A.shape[1] and hermitian_defect(A) <= tol


def as_hermitian(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate ``A`` as Hermitian and return a copy with exact symmetry.

    Diagonal imaginary parts are zeroed and the off-diagonal part is replaced
    by its Hermitian average.
    """
    A = as_qarray(A, 3)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"Hermitian matrix must be square, got {A.shape[:2]}")
    defect = hermitian_defect(A)
    if defect > tol:
        raise NotHermitianError(f"matrix differs from its adjoint by {defect:.3e}")
    return symmetrize(A)


def symmetrize(A) -> np.ndarray:
    """``(A + A*) / 2`` with an exactly real diagonal (no validation)."""
    A = as_qarray(A, 3)
    out = 0.5 * (A + adjoint(A))
    idx = np.arange(A.shape[0])
    out[idx, idx, 1:] = 0.0
    return np.ascontiguousarray(out)


def to_json_dict(A) -> dict:
    A = as_qarray(A, 3)
    return {
        "rows": int(A.shape[0]),
        "cols": int(A.shape[1]),
        "entries": A.reshape(-1, 4).tolist(),
    }


def from_json_dict(obj) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = np.asarray(obj["entries"], dtype=np.float64)
    if rows < 1 or cols < 1 or entries.shape != (rows * cols, 4):
        raise DimensionError(
            f"entries of shape {entries.shape} do not fit a {rows}x{cols} quaternionic matrix"
        )
    return np.ascontiguousarray(entries.reshape(rows, cols, 4))
