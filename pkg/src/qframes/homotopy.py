"""Discrete paths inside a stratum of frames (fixed spectrum and norms).

Strata are path-connected, but nothing constructive comes with that fact, so
:func:`find_path` is a heuristic.  It is built on the Gram-matrix picture:
the frames of a stratum modulo ``Sp(d)`` are the Hermitian matrices with
spectrum ``lam`` padded by zeros and diagonal ``r``.

1. Align ``F1`` to ``F0`` by the symplectic Procrustes rotation ``W``.
2. For ``s`` in ``[0, 1]`` take the chord point ``(1 - s) F0 + s W F1`` and
   project its Gram matrix back onto the stratum by alternating a spectral
   reset (eigenvalues replaced by ``lam``, eigenvectors kept) with a norm
   reset (columns rescaled), then finish with plane rotations that pin the
   diagonal exactly.  Both resets act on the frame itself (left by a
   positive operator, right by a diagonal or symplectic matrix), so the lift
   from Gram matrices back to frames is continuous by construction.
3. Undo ``W`` gradually along the path with ``exp(s log W^{-1})``.

Gaps between consecutive samples are bisected.  When that does not close
them the search is repeated through random pivot frames of the same
stratum.  :class:`~qframes.errors.PathNotFound` only means this heuristic
failed.

All projections run on complex embeddings (``2d x 2N`` complex arrays).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import PathNotFound, SpectrumMismatch
from .frames import (
    Frame,
    NormSpec,
    SpectrumSpec,
    as_norms,
    as_spectrum,
    column_norms_sq,
    frame_operator,
)
from .qmat import adjoint, matmul, norm_inf, psi, unpsi
from .spectral import PAIR_TOL, eigh_q, eigvalsh_q
from .synthesis import random_frame_in_stratum, rotation_for_target

ROTATION_HANDOFF = 1e-1


@dataclass(frozen=True)
class PathOptions:
    steps: int = 64
    tol: float = 1e-8
    max_restarts: int = 20
    seed: int = 0
    max_iter: int = 500
    max_depth: int = 12
    step_bound: float | None = None

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("steps must be at least 2")


@dataclass(frozen=True)
class PathReport:
    spectrum_dev: tuple
    norm_dev: tuple
    step_sizes: tuple
    max_spectrum_dev: float
    max_norm_dev: float
    max_step: float
    step_bound: float
    tol: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tol": self.tol,
            "step_bound": self.step_bound,
            "max_spectrum_dev": self.max_spectrum_dev,
            "max_norm_dev": self.max_norm_dev,
            "max_step": self.max_step,
            "n_samples": len(self.spectrum_dev),
            "spectrum_dev": list(self.spectrum_dev),
            "norm_dev": list(self.norm_dev),
            "step_sizes": list(self.step_sizes),
        }


@dataclass(frozen=True, eq=False)
class FramePath:
    samples: tuple
    lam: SpectrumSpec
    r: NormSpec
    max_spectrum_dev: float
    max_norm_dev: float
    max_step: float
    restarts: int = 0
    report: PathReport | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.samples)

    def to_json_dict(self) -> dict:
        out = {
            "lambda": self.lam.tolist(),
            "r": self.r.original.tolist(),
            "samples": [fr.to_json_dict() for fr in self.samples],
        }
        if self.report is not None:
            out["report"] = self.report.to_json_dict()
        return out


def default_step_bound(lam, r) -> float:
    lam = as_spectrum(lam)
    r = as_norms(r)
    return 0.5 * min(math.sqrt(lam.values[-1]), math.sqrt(r.values[-1]))


# --------------------------------------------------------------------------
# verification

def _step(A: np.ndarray, B: np.ndarray) -> float:
    return norm_inf(A - B)


def verify_path(path, lam=None, r=None, tol: float = 1e-8, step_bound: float | None = None) -> PathReport:
    """Recompute every constraint along a path from its samples alone."""
    samples = path.samples if isinstance(path, FramePath) else tuple(path)
    lam = as_spectrum(path.lam if lam is None else lam)
    r = as_norms(path.r if r is None else r)
    bound = default_step_bound(lam, r) if step_bound is None else float(step_bound)
    spec_dev, norm_dev, steps = [], [], []
    for fr in samples:
        F = fr.F if isinstance(fr, Frame) else np.asarray(fr)
        if F.shape[0] != lam.d or F.shape[1] != r.N:
            spec_dev.append(math.inf)
            norm_dev.append(math.inf)
            continue
        vals = np.clip(eigvalsh_q(frame_operator(F)), 0.0, None)
        spec_dev.append(float(np.max(np.abs(vals - lam.values))))
        norm_dev.append(float(np.max(np.abs(column_norms_sq(F) - r.original))))
    mats = [fr.F if isinstance(fr, Frame) else np.asarray(fr) for fr in samples]
    for a, b in zip(mats[:-1], mats[1:]):
        steps.append(_step(a, b) if a.shape == b.shape else math.inf)
    ms = max(spec_dev) if spec_dev else math.inf
    mn = max(norm_dev) if norm_dev else math.inf
    mx = max(steps) if steps else 0.0
    passed = len(samples) >= 2 and ms <= tol and mn <= tol and mx <= bound
    return PathReport(
        spectrum_dev=tuple(spec_dev),
        norm_dev=tuple(norm_dev),
        step_sizes=tuple(steps),
        max_spectrum_dev=ms,
        max_norm_dev=mn,
        max_step=mx,
        step_bound=bound,
        tol=tol,
        passed=bool(passed),
    )


# --------------------------------------------------------------------------
# complex-embedding helpers

def _polar_unitary(M: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(M)
    return u @ vh


def _unitary_eig(Uc: np.ndarray):
    """Eigenvectors and eigen-angles of a unitary matrix (principal branch)."""
    from scipy.linalg import schur

    T, Z = schur(Uc, output="complex")
    return Z, np.angle(np.diag(T))


def _unitary_power(Z: np.ndarray, theta: np.ndarray, s: float) -> np.ndarray:
    return (Z * np.exp(1j * s * theta)[None, :]) @ Z.conj().T


def _qmodulus_step(X: np.ndarray, Y: np.ndarray, d: int, N: int) -> float:
    D = X[:d] - Y[:d]
    return float(np.sqrt(np.max(np.abs(D[:, :N]) ** 2 + np.abs(D[:, N:]) ** 2)))


class _Projector:
    """Projection of (embedded) frames onto one stratum."""

    def __init__(self, lam: SpectrumSpec, r: NormSpec, tol: float, max_iter: int):
        self.d = lam.d
        self.N = r.N
        self.lam2 = np.repeat(lam.values, 2)
        self.r = np.asarray(r.original, dtype=np.float64)
        self.tol = tol
        self.max_iter = max_iter
        self.scale = 1.0 + float(lam.values[0])

    def _spectral_reset(self, X: np.ndarray):
        mu, Q = np.linalg.eigh(X @ X.conj().T)
        mu, Q = mu[::-1], Q[:, ::-1]
        if mu[-1] <= 1e-12 * self.scale:
            return None
        return (Q * np.sqrt(self.lam2 / mu)[None, :]) @ (Q.conj().T @ X)

    def _col_norms(self, X: np.ndarray) -> np.ndarray:
        return np.sum(np.abs(X[:, : self.N]) ** 2, axis=0)

    def project(self, X0: np.ndarray):
        """Frame (quaternion array) in the stratum near ``X0``, or ``None``."""
        X = X0
        handoff = ROTATION_HANDOFF * self.scale
        for _ in range(self.max_iter):
            X = self._spectral_reset(X)
            if X is None:
                return None
            n = self._col_norms(X)
            if np.max(np.abs(n - self.r)) <= handoff:
                F = self._pin_norms(unpsi(X, check=False))
                if F is not None:
                    return F
                handoff *= 0.01
            if np.any(n <= 0.0):
                return None
            fac = np.sqrt(self.r / n)
            X = X * np.concatenate([fac, fac])[None, :]
        return None

    def _pin_norms(self, F: np.ndarray):
        """Plane rotations on the right that set every column norm exactly.

        Right multiplication by a symplectic matrix leaves ``F F*`` alone.
        Pairs are tried by largest excess against largest shortfall.
        """
        F = np.ascontiguousarray(F)
        G = np.ascontiguousarray(matmul(adjoint(F), F))
        r = self.r
        tiny = 1e-14 * self.scale
        for _ in range(4 * self.N):
            dev = np.diagonal(G[..., 0]) - r
            if np.max(np.abs(dev)) <= tiny:
                return F
            over = [int(i) for i in np.argsort(-dev, kind="stable") if dev[i] > tiny]
            under = [int(i) for i in np.argsort(dev, kind="stable") if dev[i] < -tiny]
            done = False
            for i in over:
                for j in under:
                    if dev[i] <= -dev[j]:
                        a, b = i, j
                    else:
                        a, b = j, i
                    rot = rotation_for_target(G, a, b, float(r[a]))
                    if rot is None:
                        continue
                    kernels.rotate_hermitian(G, a, b, *rot)
                    kernels.rotate_columns(F, a, b, *rot)
                    done = True
                    break
                if done:
                    break
            if not done:
                return None
        dev = np.diagonal(G[..., 0]) - r
        return F if np.max(np.abs(dev)) <= self.tol else None


def _check_endpoints(F0: Frame, F1: Frame, tol: float):
    if F0.d != F1.d or F0.N != F1.N:
        raise SpectrumMismatch(f"frames of shapes {F0.F.shape[:2]} and {F1.F.shape[:2]}")
    s0 = eigvalsh_q(frame_operator(F0))
    s1 = eigvalsh_q(frame_operator(F1))
    scale = 1.0 + float(s0[0])
    if np.max(np.abs(s0 - s1)) > tol * scale:
        raise SpectrumMismatch(f"frame spectra differ by {np.max(np.abs(s0 - s1)):.3e}")
    n0, n1 = F0.norms_sq(), F1.norms_sq()
    if np.max(np.abs(n0 - n1)) > tol * scale:
        raise SpectrumMismatch(f"frame norms differ by {np.max(np.abs(n0 - n1)):.3e}")
    return SpectrumSpec(np.clip(s0, 0.0, None)), NormSpec(n0)


def _segment(F0: np.ndarray, F1: np.ndarray, proj: _Projector, opts: PathOptions, bound: float):
    """Samples of one chord-projection segment, or ``None`` on failure."""
    d, N = proj.d, proj.N
    X0, X1 = psi(F0), psi(F1)
    W = _polar_unitary(X0 @ X1.conj().T)
    X1a = W @ X1
    # W^{-1} = W^H, applied gradually: E_s = exp(s log W^H)
    Z, theta = _unitary_eig(W.conj().T)

    cache = {}

    def sample(s: float):
        if s in cache:
            return cache[s]
        if s == 0.0:
            out = X0
        elif s == 1.0:
            out = X1
        else:
            F = proj.project((1.0 - s) * X0 + s * X1a)
            out = None if F is None else _unitary_power(Z, theta, s) @ psi(F)
        cache[s] = out
        return out

    target = 0.5 * bound
    grid = list(np.linspace(0.0, 1.0, opts.steps))
    pts = [(s, sample(s)) for s in grid]
    if any(x is None for _, x in pts):
        return None
    out = [pts[0]]
    for (sa, xa), (sb, xb) in zip(pts[:-1], pts[1:]):
        refined = _refine(sa, xa, sb, xb, sample, target, d, N, opts.max_depth)
        if refined is None:
            return None
        out.extend(refined)
    mats = []
    for _, X in out:
        mats.append(unpsi(X, check=False))
    mats[0] = np.array(F0)
    mats[-1] = np.array(F1)
    return mats


def _refine(sa, xa, sb, xb, sample, target, d, N, depth):
    """Bisect ``[sa, sb]`` until every step is below ``target``.

    Returns the samples after ``sa`` up to and including ``sb``.
    """
    if _qmodulus_step(xa, xb, d, N) <= target:
        return [(sb, xb)]
    if depth == 0:
        return None
    sm = 0.5 * (sa + sb)
    xm = sample(sm)
    if xm is None:
        return None
    left = _refine(sa, xa, sm, xm, sample, target, d, N, depth - 1)
    if left is None:
        return None
    right = _refine(sm, xm, sb, xb, sample, target, d, N, depth - 1)
    if right is None:
        return None
    return left + right


def find_path(F0, F1, opts: PathOptions | None = None) -> FramePath:
    """Discrete path from ``F0`` to ``F1`` inside their common stratum.

    Raises
    ------
    SpectrumMismatch
        If the endpoints differ in frame spectrum or norms beyond ``opts.tol``.
    PathNotFound
        If the heuristic fails after ``opts.max_restarts`` pivot restarts.
        The stratum is still path-connected; only the search gave up.
    """
    opts = opts or PathOptions()
    F0 = F0 if isinstance(F0, Frame) else Frame(F0)
    F1 = F1 if isinstance(F1, Frame) else Frame(F1)
    lam, r = _check_endpoints(F0, F1, opts.tol)
    bound = default_step_bound(lam, r) if opts.step_bound is None else opts.step_bound

    if np.array_equal(F0.F, F1.F):
        return _finish([F0.F, F1.F], lam, r, opts.tol, bound, 0)

    proj = _Projector(lam, r, opts.tol, opts.max_iter)
    mats = _segment(F0.F, F1.F, proj, opts, bound)
    if mats is not None:
        path = _finish(mats, lam, r, opts.tol, bound, 0)
        if path.report.passed:
            return path
    for k in range(1, opts.max_restarts + 1):
        sub = int(np.random.SeedSequence([int(opts.seed), k]).generate_state(1, np.uint64)[0])
        try:
            pivot = random_frame_in_stratum(lam, r, sub).F
        except Exception:
            continue
        first = _segment(F0.F, pivot, proj, opts, bound)
        if first is None:
            continue
        second = _segment(pivot, F1.F, proj, opts, bound)
        if second is None:
            continue
        path = _finish(first + second[1:], lam, r, opts.tol, bound, k)
        if path.report.passed:
            return path
    raise PathNotFound(
        f"no path found after {opts.max_restarts} restarts; this is a failure of "
        "the search heuristic, not evidence that the stratum is disconnected"
    )


def _finish(mats, lam, r, tol, bound, restarts) -> FramePath:
    samples = tuple(Frame.unchecked(F) for F in mats)
    rep = verify_path(samples, lam, r, tol=tol, step_bound=bound)
    return FramePath(
        samples=samples,
        lam=lam,
        r=r,
        max_spectrum_dev=rep.max_spectrum_dev,
        max_norm_dev=rep.max_norm_dev,
        max_step=rep.max_step,
        restarts=restarts,
        report=rep,
    )


# --------------------------------------------------------------------------
# fixed frame operator

def _clusters(vals: np.ndarray, scale: float):
    bounds = [0]
    for t in range(1, len(vals)):
        if vals[bounds[-1]] - vals[t] > PAIR_TOL * scale:
            bounds.append(t)
    bounds.append(len(vals))
    return list(zip(bounds[:-1], bounds[1:]))


def _polar_q(M: np.ndarray) -> np.ndarray:
    """Unitary polar factor of a square quaternionic matrix, symplectic."""
    P = unpsi(_polar_unitary(psi(M)), check=False)
    Q, _ = kernels.gram_schmidt(np.ascontiguousarray(P))
    return Q


def align_path_to_fixed_S(path: FramePath, S, tol: float = 1e-7) -> FramePath:
    """Move every sample onto the frame operator ``S`` by a left symplectic factor.

    Each sample ``F_t`` has ``F_t F_t* = U_t S U_t*`` for some symplectic
    ``U_t``; the output sample is ``U_t* F_t``.  ``U_t`` is only determined up
    to the stabilizer of ``S``; within it the element closest to ``U_{t-1}``
    is taken (``U_0 = I``).  If the last input sample already has frame
    operator ``S``, the final stabilizer element is unwound along the path so
    that the last sample is returned unchanged.

    Raises
    ------
    SpectrumMismatch
        If the spectrum of ``S`` is not the path's spectrum, or the first
        sample does not have frame operator ``S``.
    """
    S = np.asarray(S, dtype=np.float64)
    eS = eigh_q(S)
    lam = path.lam
    scale = 1.0 + float(lam.values[0])
    if eS.eigenvalues.shape != lam.values.shape or np.max(np.abs(eS.eigenvalues - lam.values)) > tol * scale:
        raise SpectrumMismatch("S does not have the path's spectrum")
    first = path.samples[0].F
    if norm_inf(frame_operator(first) - S) > tol * scale:
        raise SpectrumMismatch("first sample does not have frame operator S")
    VS = eS.U
    VSh = adjoint(VS)
    blocks = _clusters(eS.eigenvalues, scale)
    d = S.shape[0]

    U_prev = np.zeros((d, d, 4))
    U_prev[np.arange(d), np.arange(d), 0] = 1.0
    out, Us = [], []
    for fr in path.samples:
        Vt = eigh_q(frame_operator(fr.F)).U
        B = matmul(U_prev, VS)
        K = np.zeros((d, d, 4))
        for lo, hi in blocks:
            K[lo:hi, lo:hi] = _polar_q(matmul(adjoint(Vt[:, lo:hi]), B[:, lo:hi]))
        Ut = matmul(matmul(Vt, K), VSh)
        out.append(matmul(adjoint(Ut), fr.F))
        Us.append(Ut)
        U_prev = Ut

    last = path.samples[-1].F
    if len(out) > 1 and norm_inf(frame_operator(last) - S) <= tol * scale:
        Z, theta = _unitary_eig(psi(Us[-1]))
        n = len(out) - 1
        for t in range(1, n + 1):
            E = unpsi(_unitary_power(Z, theta, t / n), check=False)
            out[t] = matmul(E, out[t])
        out[-1] = np.array(last)
    out[0] = np.array(first)
    samples = tuple(Frame.unchecked(F) for F in out)
    steps = [norm_inf(a.F - b.F) for a, b in zip(samples[:-1], samples[1:])]
    spec = [float(np.max(np.abs(np.clip(eigvalsh_q(frame_operator(f.F)), 0, None) - lam.values))) for f in samples]
    nrm = [float(np.max(np.abs(f.norms_sq() - path.r.original))) for f in samples]
    return FramePath(
        samples=samples,
        lam=lam,
        r=path.r,
        max_spectrum_dev=max(spec),
        max_norm_dev=max(nrm),
        max_step=max(steps) if steps else 0.0,
        restarts=path.restarts,
    )
