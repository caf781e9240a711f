"""Compare the numba kernels with their numpy twins.

Kernel timings run in-process (both implementations are importable side by
side).  The end-to-end timings run ``synthesize_frame`` and ``find_path`` in
subprocesses with and without ``QFRAMES_DISABLE_NUMBA``, since the flag is
read at import time.

    python benchmarks/bench_kernels.py [--repeat 20]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from qframes import kernels

END_TO_END = r"""
import time, numpy as np
from qframes import synthesize_frame, SynthesisOptions, random_frame_in_stratum, find_path, PathOptions
from qframes.kernels import BACKEND
# warm up (loads or compiles the jit cache)
W0 = random_frame_in_stratum([1.5, 1.5], [1.0, 1.0, 1.0], 0)
find_path(W0, random_frame_in_stratum([1.5, 1.5], [1.0, 1.0, 1.0], 1))
t = time.perf_counter()
for s in range(200):
    synthesize_frame([3.0, 2.0, 1.5], [1.5, 1.5, 1.0, 1.0, 1.0, 0.5], SynthesisOptions(seed=s))
t_syn = (time.perf_counter() - t) / 200
lam, r = [2.0, 2.0, 2.0], [1.0] * 6
F0, F1 = random_frame_in_stratum(lam, r, 1), random_frame_in_stratum(lam, r, 2)
t = time.perf_counter()
for s in range(5):
    find_path(F0, F1, PathOptions(seed=s))
t_path = (time.perf_counter() - t) / 5
print(f"{BACKEND:6s} synthesize_frame (d=3, N=6) {t_syn * 1e3:8.3f} ms   find_path (UNTF 3x6) {t_path * 1e3:8.1f} ms")
"""


def _time(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_table(repeat):
    rng = np.random.default_rng(0)
    rows = []
    g = rng.standard_normal(4)
    w = g / np.linalg.norm(g)
    c, s = np.cos(0.3), np.sin(0.3)
    for n in (4, 16, 64):
        A = rng.standard_normal((n, n, 4))
        B = rng.standard_normal((n, n, 4))
        rows.append((f"qmatmul {n}x{n}", lambda A=A, B=B: kernels.qmatmul_np(A, B), lambda A=A, B=B: kernels.qmatmul_nb(A, B)))
        rows.append(
            (f"gram_schmidt {n}x{n}", lambda A=A: kernels.gram_schmidt_np(A), lambda A=A: kernels.gram_schmidt_nb(A))
        )
        Hc = A + A.transpose(1, 0, 2) * np.array([1, -1, -1, -1])
        rows.append(
            (
                f"rotate_hermitian {n}x{n}",
                lambda Hc=Hc, n=n: kernels.rotate_hermitian_np(Hc, 0, n - 1, c, s, w),
                lambda Hc=Hc, n=n: kernels.rotate_hermitian_nb(Hc, 0, n - 1, c, s, w),
            )
        )
    print(f"{'kernel':28s} {'numpy [us]':>12s} {'numba [us]':>12s} {'speedup':>9s}")
    for name, f_np, f_nb in rows:
        t_np = _time(f_np, repeat) * 1e6
        t_nb = _time(f_nb, repeat) * 1e6
        print(f"{name:28s} {t_np:12.2f} {t_nb:12.2f} {t_np / t_nb:9.1f}")


def end_to_end():
    for flag in ("0", "1"):
        env = dict(os.environ, QFRAMES_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True)
        sys.stdout.write(res.stdout if res.returncode == 0 else res.stderr)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    kernel_table(args.repeat)
    print()
    end_to_end()


if __name__ == "__main__":
    main()
