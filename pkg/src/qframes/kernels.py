"""Hot quaternion kernels, each with a numba and a pure-numpy implementation.

Arrays carry quaternions along a trailing axis of length 4 holding the
coefficients of ``1, i, j, k``.  The public names at the bottom of the module
are bound to the numba versions unless ``QFRAMES_DISABLE_NUMBA`` is set.
Kernels that mutate (``rotate_*``) work in place on float64 arrays.
"""

import numpy as np

from ._backend import USE_NUMBA, njit

__all__ = [
    "qmul",
    "qconj",
    "qmatmul",
    "gram_schmidt",
    "rotate_hermitian",
    "rotate_columns",
    "BACKEND",
]


def qmul(p, q):
    """Broadcasting Hamilton product of quaternion arrays of shape ``(..., 4)``."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    a1, b1, c1, d1 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    a2, b2, c2, d2 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )


def qconj(q):
    q = np.asarray(q, dtype=np.float64)
    out = -q
    out[..., 0] = q[..., 0]
    return out


# --------------------------------------------------------------------------
# numpy implementations

def qmatmul_np(A, B):
    """Quaternionic matrix product of ``(m, k, 4)`` and ``(k, n, 4)`` arrays."""
    a = [A[..., t] for t in range(4)]
    b = [B[..., t] for t in range(4)]
    out = np.empty((A.shape[0], B.shape[1], 4))
    out[..., 0] = a[0] @ b[0] - a[1] @ b[1] - a[2] @ b[2] - a[3] @ b[3]
    out[..., 1] = a[0] @ b[1] + a[1] @ b[0] + a[2] @ b[3] - a[3] @ b[2]
    out[..., 2] = a[0] @ b[2] - a[1] @ b[3] + a[2] @ b[0] + a[3] @ b[1]
    out[..., 3] = a[0] @ b[3] + a[1] @ b[2] - a[2] @ b[1] + a[3] @ b[0]
    return out


def gram_schmidt_np(A):
    """Orthonormalize the columns of ``A`` with right-scalar projections.

    Two sweeps of modified Gram-Schmidt.  Returns ``(Q, pivots)`` where
    ``pivots[k]`` is the residual norm of column ``k`` before normalization
    (first sweep); a tiny pivot means the column was dependent.
    """
    k = A.shape[1]
    Q = np.array(A, dtype=np.float64, copy=True)
    pivots = np.zeros(k)
    for col in range(k):
        v = Q[:, col, :]
        for sweep in range(2):
            for prev in range(col):
                q = Q[:, prev, :]
                coef = qmul(qconj(q), v).sum(axis=0)
                v = v - qmul(q, coef[None, :])
            nrm = np.sqrt(np.sum(v * v))
            if sweep == 0:
                pivots[col] = nrm
            if nrm > 0.0:
                v = v / nrm
        Q[:, col, :] = v
    return Q, pivots


def _rot_row_np(X, i, j, c, s, w):
    xi = X[i].copy()
    xj = X[j].copy()
    X[i] = c * xi - s * qmul(w, xj)
    X[j] = s * qmul(qconj(w), xi) + c * xj


def rotate_columns_np(F, i, j, c, s, w):
    """In place ``F <- F R*`` for the symplectic plane rotation in ``(i, j)``.

    ``R`` is the identity except ``[[c, -s w], [s conj(w), c]]`` on rows and
    columns ``i, j``; ``w`` is a unit quaternion.
    """
    fi = F[:, i].copy()
    fj = F[:, j].copy()
    F[:, i] = c * fi - s * qmul(fj, qconj(w))
    F[:, j] = s * qmul(fi, w) + c * fj


def rotate_hermitian_np(H, i, j, c, s, w):
    """In place ``H <- R H R*`` for the rotation described in ``rotate_columns``."""
    _rot_row_np(H, i, j, c, s, w)
    rotate_columns_np(H, i, j, c, s, w)
    H[i, i, 1:] = 0.0
    H[j, j, 1:] = 0.0


# --------------------------------------------------------------------------
# numba implementations

@njit
def _qm(a1, b1, c1, d1, a2, b2, c2, d2):
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


@njit
def qmatmul_nb(A, B):
    m, k = A.shape[0], A.shape[1]
    n = B.shape[1]
    out = np.zeros((m, n, 4))
    for r in range(m):
        for c in range(n):
            s0 = 0.0
            s1 = 0.0
            s2 = 0.0
            s3 = 0.0
            for t in range(k):
                p0, p1, p2, p3 = _qm(A[r, t, 0], A[r, t, 1], A[r, t, 2], A[r, t, 3],
                                     B[t, c, 0], B[t, c, 1], B[t, c, 2], B[t, c, 3])
                s0 += p0
                s1 += p1
                s2 += p2
                s3 += p3
            out[r, c, 0] = s0
            out[r, c, 1] = s1
            out[r, c, 2] = s2
            out[r, c, 3] = s3
    return out


@njit
def gram_schmidt_nb(A):
    m, k = A.shape[0], A.shape[1]
    Q = A.copy()
    pivots = np.zeros(k)
    for col in range(k):
        for sweep in range(2):
            for prev in range(col):
                # coef = <v, q_prev> = sum conj(q) v
                e0 = 0.0
                e1 = 0.0
                e2 = 0.0
                e3 = 0.0
                for r in range(m):
                    p0, p1, p2, p3 = _qm(Q[r, prev, 0], -Q[r, prev, 1], -Q[r, prev, 2], -Q[r, prev, 3],
                                         Q[r, col, 0], Q[r, col, 1], Q[r, col, 2], Q[r, col, 3])
                    e0 += p0
                    e1 += p1
                    e2 += p2
                    e3 += p3
                for r in range(m):
                    p0, p1, p2, p3 = _qm(Q[r, prev, 0], Q[r, prev, 1], Q[r, prev, 2], Q[r, prev, 3],
                                         e0, e1, e2, e3)
                    Q[r, col, 0] -= p0
                    Q[r, col, 1] -= p1
                    Q[r, col, 2] -= p2
                    Q[r, col, 3] -= p3
            acc = 0.0
            for r in range(m):
                for t in range(4):
                    acc += Q[r, col, t] * Q[r, col, t]
            nrm = np.sqrt(acc)
            if sweep == 0:
                pivots[col] = nrm
            if nrm > 0.0:
                for r in range(m):
                    for t in range(4):
                        Q[r, col, t] /= nrm
    return Q, pivots


@njit
def rotate_columns_nb(F, i, j, c, s, w):
    w0, w1, w2, w3 = w[0], w[1], w[2], w[3]
    for r in range(F.shape[0]):
        fi0, fi1, fi2, fi3 = F[r, i, 0], F[r, i, 1], F[r, i, 2], F[r, i, 3]
        fj0, fj1, fj2, fj3 = F[r, j, 0], F[r, j, 1], F[r, j, 2], F[r, j, 3]
        a0, a1, a2, a3 = _qm(fj0, fj1, fj2, fj3, w0, -w1, -w2, -w3)
        b0, b1, b2, b3 = _qm(fi0, fi1, fi2, fi3, w0, w1, w2, w3)
        F[r, i, 0] = c * fi0 - s * a0
        F[r, i, 1] = c * fi1 - s * a1
        F[r, i, 2] = c * fi2 - s * a2
        F[r, i, 3] = c * fi3 - s * a3
        F[r, j, 0] = s * b0 + c * fj0
        F[r, j, 1] = s * b1 + c * fj1
        F[r, j, 2] = s * b2 + c * fj2
        F[r, j, 3] = s * b3 + c * fj3


@njit
def rotate_hermitian_nb(H, i, j, c, s, w):
    w0, w1, w2, w3 = w[0], w[1], w[2], w[3]
    for col in range(H.shape[1]):
        xi0, xi1, xi2, xi3 = H[i, col, 0], H[i, col, 1], H[i, col, 2], H[i, col, 3]
        xj0, xj1, xj2, xj3 = H[j, col, 0], H[j, col, 1], H[j, col, 2], H[j, col, 3]
        a0, a1, a2, a3 = _qm(w0, w1, w2, w3, xj0, xj1, xj2, xj3)
        b0, b1, b2, b3 = _qm(w0, -w1, -w2, -w3, xi0, xi1, xi2, xi3)
        H[i, col, 0] = c * xi0 - s * a0
        H[i, col, 1] = c * xi1 - s * a1
        H[i, col, 2] = c * xi2 - s * a2
        H[i, col, 3] = c * xi3 - s * a3
        H[j, col, 0] = s * b0 + c * xj0
        H[j, col, 1] = s * b1 + c * xj1
        H[j, col, 2] = s * b2 + c * xj2
        H[j, col, 3] = s * b3 + c * xj3
    rotate_columns_nb(H, i, j, c, s, w)
    for t in range(1, 4):
        H[i, i, t] = 0.0
        H[j, j, t] = 0.0


if USE_NUMBA:
    BACKEND = "numba"
    qmatmul = qmatmul_nb
    gram_schmidt = gram_schmidt_nb
    rotate_columns = rotate_columns_nb
    rotate_hermitian = rotate_hermitian_nb
else:
    BACKEND = "numpy"
    qmatmul = qmatmul_np
    gram_schmidt = gram_schmidt_np
    rotate_columns = rotate_columns_np
    rotate_hermitian = rotate_hermitian_np
