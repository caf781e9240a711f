"""Seeded generators shared by the test modules."""

import numpy as np

from qframes.qmat import adjoint, matmul, symmetrize
from qframes.synthesis import random_symplectic


def rand_q(rng, *shape):
    return rng.standard_normal(shape + (4,))


def rand_hermitian(rng, m):
    return symmetrize(rand_q(rng, m, m))


def hermitian_with_spectrum(rng, values):
    U = random_symplectic(len(values), rng)
    D = np.zeros((len(values), len(values), 4))
    D[np.arange(len(values)), np.arange(len(values)), 0] = values
    return symmetrize(matmul(matmul(U, D), adjoint(U))), U


def complex_embedding_by_hand(A):
    """Independent construction of the complex embedding, entry by entry."""
    m, k = A.shape[:2]
    M = np.zeros((2 * m, 2 * k), dtype=complex)
    for p in range(m):
        for q in range(k):
            a, b, c, d = A[p, q]
            z, w = complex(a, b), complex(c, d)
            M[p, q] = z
            M[p, k + q] = w
            M[m + p, q] = -w.conjugate()
            M[m + p, k + q] = z.conjugate()
    return M


def mix_of_permutations(rng, base, n_terms, fixed_block=None):
    """A strictly positive convex combination of permutations of ``base``.

    With ``fixed_block = k`` every permutation maps ``{0..k-1}`` onto itself,
    so the top-``k`` prefix sum of the (sorted) result equals that of
    ``base``: a tight prefix.
    """
    N = len(base)
    w = rng.dirichlet(np.ones(n_terms)) * 0.98 + 0.02 / n_terms
    out = np.zeros(N)
    for wi in w:
        if fixed_block is None:
            perm = rng.permutation(N)
        else:
            k = fixed_block
            perm = np.concatenate([rng.permutation(k), k + rng.permutation(N - k)])
        out += wi * base[perm]
    return out


def admissibility_cases(seed=20240611, n=1000, n_boundary=120):
    """``(lam, r, kind)`` triples with ``1 <= d <= 4``, ``d <= N <= 7`` and
    entries in ``(0, 5]``.

    Kinds: ``"inside"`` (random mix of permutations), ``"boundary"`` (tight
    prefix sum), ``"perturbed"`` (mass moved onto the largest entry, often
    past a prefix bound), ``"random"`` (unstructured draw).
    """
    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < n:
        d = int(rng.integers(1, 5))
        N = int(rng.integers(d, 8))
        lam = np.sort(rng.uniform(0.05, 5.0, d))[::-1]
        lt = np.concatenate([lam, np.zeros(N - d)])
        n_boundary_now = sum(1 for c in cases if c[2] == "boundary")
        if n_boundary_now < n_boundary and (N == d or d > 1):
            if N == d:
                r = lam[rng.permutation(d)]
            else:
                # tight at prefix k < d: mix permutations that keep {0..k-1} in place
                k = int(rng.integers(1, d))
                r = mix_of_permutations(rng, lt, int(rng.integers(2, 6)), fixed_block=k)
            kind = "boundary"
        else:
            u = rng.uniform()
            if u < 0.4:
                r = mix_of_permutations(rng, lt, int(rng.integers(1, 6)))
                kind = "inside"
            elif u < 0.75:
                r = mix_of_permutations(rng, lt, int(rng.integers(1, 6)))
                i, j = rng.choice(N, 2, replace=False) if N > 1 else (0, 0)
                if N > 1:
                    # push mass toward the largest entry past the majorization limit
                    top = int(np.argmax(r))
                    other = j if top != j else i
                    shift = min(r[other] * 0.99, rng.uniform(0.05, 2.0))
                    r[top] += shift
                    r[other] -= shift
                else:
                    r = r * rng.uniform(1.01, 1.5)
                kind = "perturbed"
            else:
                r = rng.uniform(0.05, 5.0, N)
                r = r * (lam.sum() / r.sum()) if rng.uniform() < 0.7 else r
                kind = "random"
        if np.any(r <= 1e-6) or np.any(r > 5.0):
            continue
        cases.append((lam, r, kind))
    return cases


def path_pairs(seed=7, n=50):
    """Stratum descriptions ``(lam, r)`` with ``d <= 3`` and ``N <= 6``.

    Mixes unit-norm tight strata, the ``(2, 1) / (1, 1, 1)`` stratum, strata
    with a repeated eigenvalue and generic ones.
    """
    rng = np.random.default_rng(seed)
    fixed = [
        ([1.5, 1.5], [1.0, 1.0, 1.0]),
        ([2.0, 1.0], [1.0, 1.0, 1.0]),
        ([2.0, 2.0], [1.0, 1.0, 1.0, 1.0]),
        ([2.0, 2.0, 2.0], [1.0] * 6),
        ([3.0, 1.0], [1.0, 1.0, 1.0, 1.0]),
    ]
    out = list(fixed)
    while len(out) < n:
        d = int(rng.integers(1, 4))
        N = int(rng.integers(d, 7))
        u = rng.uniform()
        if u < 0.25:
            out.append(([N / d] * d, [1.0] * N))
            continue
        lam = np.sort(rng.uniform(0.5, 3.0, d))[::-1]
        if u < 0.4 and d > 1:
            lam[1] = lam[0]
        lt = np.concatenate([lam, np.zeros(N - d)])
        r = 0.7 * mix_of_permutations(rng, lt, 4) + 0.3 * lt.sum() / N
        out.append((lam.tolist(), r.tolist()))
    return out[:n]
