"""Construct frames with prescribed frame spectrum and norms.

Pipeline: build a real symmetric matrix with spectrum ``lam`` padded by
zeros and diagonal ``r`` from a chain of plane rotations, conjugate it by a
random diagonal of unit quaternions, factor it as a Gram matrix and finally
apply a random symplectic matrix on the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .admissibility import is_admissible, pad_spectrum
from .errors import DegenerateDrawError, NotAdmissibleError
from .frames import Frame, as_norms, as_spectrum, gram_to_frame
from .qmat import adjoint, as_qarray, matmul

GS_PIVOT_FLOOR = 1e-12
MAX_REDRAWS = 8


@dataclass(frozen=True)
class SynthesisOptions:
    seed: int = 0
    randomize_versors: bool = True
    randomize_left: bool = True


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unit_quaternions(n: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    q = rng.standard_normal((n, 4))
    return q / np.linalg.norm(q, axis=1, keepdims=True)


def random_symplectic(m: int, seed=None) -> np.ndarray:
    """Haar-distributed element of ``Sp(m)``.

    Quaternionic Gram-Schmidt on a matrix of i.i.d. standard normal
    coefficients.  Redraws up to 8 times if a pivot collapses.
    """
    if m < 1:
        raise ValueError("m must be positive")
    rng = _rng(seed)
    for _ in range(MAX_REDRAWS + 1):
        G = rng.standard_normal((m, m, 4))
        Q, pivots = kernels.gram_schmidt(G)
        if pivots.min() >= GS_PIVOT_FLOOR:
            return Q
    raise DegenerateDrawError(f"Gram-Schmidt pivot below {GS_PIVOT_FLOOR} in {MAX_REDRAWS + 1} draws")


# --------------------------------------------------------------------------
# plane rotations on Hermitian matrices

def rotation_for_target(H: np.ndarray, i: int, j: int, target: float):
    """Rotation parameters ``(c, s, w)`` that put ``target`` at ``H[i, i]``.

    The rotation acts in the ``(i, j)`` plane, so only diagonal entries ``i``
    and ``j`` change and their sum is kept.  Returns ``None`` when ``target``
    is outside the eigenvalue range of the ``2 x 2`` principal block.  Among
    the solutions the one with the smallest angle is taken.
    """
    x, y = H[i, i, 0], H[j, j, 0]
    g = H[i, j]
    gabs = float(np.sqrt(np.sum(g * g)))
    w = g / gabs if gabs > 0.0 else np.array([1.0, 0.0, 0.0, 0.0])
    mean = 0.5 * (x + y)
    half = 0.5 * (x - y)
    radius = math.hypot(half, gabs)
    delta = target - mean
    slack = 1e-12 * (1.0 + abs(x) + abs(y))
    if abs(delta) > radius + slack:
        return None
    if radius == 0.0:
        return 1.0, 0.0, w
    ratio = min(1.0, max(-1.0, delta / radius))
    # x_i(phi) = mean + half cos(phi) - |g| sin(phi) = mean + radius cos(phi + alpha)
    alpha = math.atan2(gabs, half)
    base = math.acos(ratio)
    best = None
    for phi in (base - alpha, -base - alpha):
        phi = (phi + math.pi) % (2.0 * math.pi) - math.pi
        if best is None or abs(phi) < abs(best):
            best = phi
    theta = 0.5 * best
    return math.cos(theta), math.sin(theta), np.ascontiguousarray(w, dtype=np.float64)


def _schur_horn(lt_sorted: np.ndarray, r: np.ndarray):
    """Real symmetric matrix with spectrum ``lt_sorted`` and diagonal ``r``.

    Both are in the permutohedron relation (caller checks).  Works in the
    coordinates that sort ``r`` non-increasingly.  At each step it takes the
    last coordinate ``j`` whose diagonal exceeds its target and the first
    later coordinate ``k`` that falls short, then rotates in the ``(j, k)``
    plane to move ``min(excess, shortfall)`` across.  That pins one of the two
    entries to its target and keeps the rest majorized, so at most ``N - 1``
    rotations are needed.
    """
    N = len(r)
    order = np.argsort(-r, kind="stable")
    H = np.zeros((N, N, 4))
    H[order, order, 0] = lt_sorted
    tol = 1e-13 * (1.0 + float(lt_sorted[0]))
    count = 0
    while True:
        dev = H[order, order, 0] - r[order]
        over = np.nonzero(dev > tol)[0]
        if over.size == 0:
            break
        j = int(over[-1])
        later = np.nonzero(dev[j + 1:] < -tol)[0]
        if later.size == 0 or count >= N - 1:
            raise ArithmeticError("rotation chain stalled; diagonal is not majorized")
        k = j + 1 + int(later[0])
        a, b = int(order[j]), int(order[k])
        if dev[j] <= -dev[k]:
            rot = rotation_for_target(H, a, b, float(r[a]))
        else:
            rot = rotation_for_target(H, b, a, float(r[b]))
            a, b = b, a
        if rot is None:
            raise ArithmeticError("target outside the reachable range of the rotation")
        kernels.rotate_hermitian(H, a, b, *rot)
        # pin exactly; the rotation is correct up to rounding
        s = H[a, a, 0] + H[b, b, 0]
        H[a, a, 0] = r[a]
        H[b, b, 0] = s - r[a]
        count += 1
    H[np.arange(N), np.arange(N), 0] = r
    return H, count


def schur_horn_matrix(lambda_padded, r, tol: float = 1e-10) -> np.ndarray:
    """Real symmetric (hence quaternionic Hermitian) matrix with spectrum
    ``lambda_padded`` and diagonal ``r`` in the given order.

    Raises
    ------
    NotAdmissibleError
        If ``r`` is not in the convex hull of the permutations of
        ``lambda_padded``.
    """
    lt = np.sort(np.asarray(lambda_padded, dtype=np.float64).reshape(-1))[::-1]
    r = np.asarray(r, dtype=np.float64).reshape(-1)
    if len(lt) != len(r):
        raise ValueError(f"length mismatch: {len(lt)} vs {len(r)}")
    lam = lt[lt > 0]
    cert = is_admissible(lam, r, tol) if lam.size and np.all(r > 0) else None
    if cert is None or not cert.admissible:
        raise NotAdmissibleError("diagonal is not reachable for this spectrum", cert)
    H, _ = _schur_horn(lt, r)
    return H


def synthesize_frame(lam, r, opts: SynthesisOptions | None = None) -> Frame:
    """A frame with frame spectrum ``lam`` and squared norms ``r`` (input order).

    Raises
    ------
    NotAdmissibleError
        If no such frame exists.
    """
    opts = opts or SynthesisOptions()
    lam = as_spectrum(lam)
    r = as_norms(r)
    cert = is_admissible(lam, r)
    if not cert.admissible:
        raise NotAdmissibleError(
            f"r is not lambda-admissible (trace gap {cert.trace_gap:.3e}, "
            f"first violated k={cert.first_violated_k})",
            cert,
        )
    d, N = lam.d, r.N
    H, _ = _schur_horn(pad_spectrum(lam, N), np.array(r.original))
    ss_versor, ss_left = np.random.SeedSequence(opts.seed).spawn(2)
    if opts.randomize_versors:
        D = random_unit_quaternions(N, np.random.default_rng(ss_versor))
        # (D H D*)_ab = d_a H_ab conj(d_b); H is real so this stays Hermitian
        Dc = kernels.qconj(D)
        H = kernels.qmul(kernels.qmul(D[:, None, :], H), Dc[None, :, :])
        H[np.arange(N), np.arange(N), 1:] = 0.0
        H[np.arange(N), np.arange(N), 0] = r.original
    Fr = gram_to_frame(np.ascontiguousarray(H), d)
    F = Fr.F
    if opts.randomize_left:
        U = random_symplectic(d, np.random.default_rng(ss_left))
        F = matmul(U, F)
    return Frame(F)


def random_frame_in_stratum(lam, r, seed=0) -> Frame:
    """A randomized member of the stratum; independent streams per seed."""
    sub = int(np.random.SeedSequence([int(seed), 0x5157]).generate_state(1, np.uint64)[0])
    return synthesize_frame(lam, r, SynthesisOptions(seed=sub, randomize_versors=True, randomize_left=True))


def conjugate(U, H) -> np.ndarray:
    """``U H U*``."""
    return matmul(matmul(as_qarray(U, 3), as_qarray(H, 3)), adjoint(U))
