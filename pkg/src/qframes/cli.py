"""Command-line interface.

Exit codes: 0 on success or an affirmative verdict, 1 on a negative verdict
(not admissible, verification failed, no path found), 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import qmat
from .admissibility import is_admissible
from .errors import NotAdmissibleError, PathNotFound, QFramesError, SpectrumMismatch
from .frames import Frame, NormSpec, SpectrumSpec, column_norms_sq, frame_operator
from .homotopy import PathOptions, find_path
from .spectral import eigvalsh_q
from .synthesis import SynthesisOptions, random_frame_in_stratum, synthesize_frame

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def parse_list(text: str) -> list[float]:
    """Comma-separated reals, always with ``.`` as the decimal point."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}") from None
    if not all(np.isfinite(v) and v > 0 for v in vals):
        raise argparse.ArgumentTypeError(f"entries must be strictly positive and finite: {text!r}")
    return vals


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (np.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _write(obj, out: str | None, stream) -> None:
    text = _dump(obj) + "\n"
    if out is None:
        stream.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"--out: cannot write {out}: {exc.strerror}") from None


def _read_json(path: str, flag: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: {path} is not valid JSON ({exc.msg}, line {exc.lineno})") from None


def _read_frame(path: str, flag: str, check: bool = True) -> Frame:
    obj = _read_json(path, flag)
    try:
        return Frame.from_json_dict(obj, check=check)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{flag}: {path} is not a frame file ({exc})") from None


def _specs(args):
    lam, r = args.lam, args.r
    if len(r) < len(lam):
        raise UsageError(f"--r: need N >= d, got N={len(r)} < d={len(lam)}")
    return SpectrumSpec(lam), NormSpec(r)


def _views(args, lam: SpectrumSpec, r: NormSpec) -> dict:
    return {
        "lambda": {"input": list(args.lam), "sorted": lam.tolist()},
        "r": {
            "input": r.original.tolist(),
            "sorted": r.values.tolist(),
            "perm": r.perm.tolist(),
        },
    }


def _fmt(values) -> str:
    return ", ".join(f"{v:.12g}" for v in values)


# --------------------------------------------------------------------------
# commands

def cmd_admissible(args, out) -> int:
    lam, r = _specs(args)
    cert = is_admissible(lam, r, args.tol)
    if args.json:
        payload = {"command": "admissible", "certificate": cert.to_json_dict()}
        payload.update(_views(args, lam, r))
        _write(payload, None, out)
    else:
        out.write("admissible\n" if cert.admissible else "not admissible\n")
        out.write(f"  lambda (sorted): {_fmt(lam.values)}\n")
        out.write(f"  r (input order): {_fmt(r.original)}\n")
        out.write(f"  r (sorted):      {_fmt(r.values)}\n")
        out.write(f"  trace gap:       {cert.trace_gap:.3e}\n")
        if cert.first_violated_k is not None:
            out.write(f"  first violated k: {cert.first_violated_k}\n")
        out.write("   k   sum r_i      sum lambda_i\n")
        for k, (a, b) in enumerate(zip(cert.partial_sums_r, cert.partial_sums_lambda), start=1):
            out.write(f"  {k:2d}   {a:<12.8g} {b:<12.8g}\n")
    return EXIT_OK if cert.admissible else EXIT_NEGATIVE


def _emit_frame(args, fr: Frame, lam, r, out, command: str) -> int:
    _write(fr.to_json_dict(), args.out, out)
    if args.out is not None:
        if args.json:
            payload = {"command": command, "out": args.out, "seed": args.seed}
            payload.update(_views(args, lam, r))
            _write(payload, None, out)
        else:
            out.write(f"wrote {args.out} (d={fr.d}, N={fr.N}, seed={args.seed})\n")
    return EXIT_OK


def _not_admissible(exc: NotAdmissibleError, args, out) -> int:
    if args.json and exc.certificate is not None:
        _write({"error": "not admissible", "certificate": exc.certificate.to_json_dict()}, None, out)
    else:
        sys.stderr.write(f"not admissible: {exc}\n")
    return EXIT_NEGATIVE


def cmd_synth(args, out) -> int:
    lam, r = _specs(args)
    try:
        fr = synthesize_frame(lam, r, SynthesisOptions(seed=args.seed))
    except NotAdmissibleError as exc:
        return _not_admissible(exc, args, out)
    return _emit_frame(args, fr, lam, r, out, "synth")


def cmd_random(args, out) -> int:
    lam, r = _specs(args)
    try:
        fr = random_frame_in_stratum(lam, r, args.seed)
    except NotAdmissibleError as exc:
        return _not_admissible(exc, args, out)
    return _emit_frame(args, fr, lam, r, out, "random")


def cmd_verify(args, out) -> int:
    lam, r = _specs(args)
    fr = _read_frame(args.frame, "--frame", check=False)
    shape_ok = fr.d == lam.d and fr.N == r.N
    if shape_ok:
        spec = np.clip(eigvalsh_q(frame_operator(fr)), 0.0, None)
        spec_dev = float(np.max(np.abs(spec - lam.values)))
        norms = column_norms_sq(fr)
        norm_dev = float(np.max(np.abs(norms - r.original)))
    else:
        spec = norms = np.array([])
        spec_dev = norm_dev = float("inf")
    spec_ok = spec_dev <= args.tol
    norm_ok = norm_dev <= args.norm_tol
    passed = bool(shape_ok and spec_ok and norm_ok)
    if args.json:
        payload = {
            "command": "verify",
            "passed": passed,
            "shape_ok": bool(shape_ok),
            "spectrum": spec.tolist(),
            "spectrum_dev": spec_dev if shape_ok else None,
            "spectrum_tol": args.tol,
            "norms": norms.tolist(),
            "norm_dev": norm_dev if shape_ok else None,
            "norm_tol": args.norm_tol,
        }
        payload.update(_views(args, lam, r))
        _write(payload, None, out)
    else:
        out.write("verified\n" if passed else "verification failed\n")
        if not shape_ok:
            out.write(f"  frame is {fr.d} x {fr.N}, expected {lam.d} x {r.N}\n")
        else:
            out.write(f"  spectrum deviation {spec_dev:.3e} (tol {args.tol:g})\n")
            out.write(f"  norm deviation     {norm_dev:.3e} (tol {args.norm_tol:g})\n")
    return EXIT_OK if passed else EXIT_NEGATIVE


def cmd_path(args, out) -> int:
    F0 = _read_frame(args.src, "--from")
    F1 = _read_frame(args.dst, "--to")
    opts = PathOptions(steps=args.steps, tol=args.tol, seed=args.seed, max_restarts=args.max_restarts)
    try:
        path = find_path(F0, F1, opts)
    except SpectrumMismatch as exc:
        sys.stderr.write(f"endpoints are in different strata: {exc}\n")
        return EXIT_NEGATIVE
    except PathNotFound as exc:
        sys.stderr.write(f"path not found: {exc}\n")
        return EXIT_NEGATIVE
    _write(path.to_json_dict(), args.out, out)
    if args.out is not None:
        rep = path.report
        if args.json:
            _write({"command": "path", "out": args.out, "report": rep.to_json_dict()}, None, out)
        else:
            out.write(
                f"wrote {args.out}: {len(path)} samples, max step {rep.max_step:.3e} "
                f"(bound {rep.step_bound:.3e}), restarts {path.restarts}\n"
            )
    return EXIT_OK


def cmd_embed(args, out) -> int:
    obj = _read_json(args.matrix, "--matrix")
    try:
        A = qmat.from_json_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--matrix: {args.matrix} is not a matrix file ({exc})") from None
    M = qmat.psi(A)
    herm = A.shape[0] == A.shape[1] and qmat.is_hermitian(A)
    payload = {"rows": 2 * A.shape[0], "cols": 2 * A.shape[1], "real": M.real.tolist(), "imag": M.imag.tolist()}
    if herm:
        payload["embedded_eigenvalues"] = np.sort(np.linalg.eigvalsh(M))[::-1].tolist()
        payload["eigenvalues"] = eigvalsh_q(A).tolist()
    if args.json:
        _write(payload, None, out)
    else:
        out.write(f"complex embedding, {M.shape[0]} x {M.shape[1]}\n")
        for row in M:
            out.write("  " + "  ".join(f"{z.real:+.6g}{z.imag:+.6g}j" for z in row) + "\n")
        if herm:
            out.write(f"eigenvalues (each twice in the embedding): {_fmt(payload['eigenvalues'])}\n")
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qframes", description="Quaternionic frames with prescribed spectrum and norms.")
    sub = p.add_subparsers(dest="command", required=True)

    def spec_flags(sp):
        sp.add_argument("--lambda", dest="lam", type=parse_list, required=True, help="frame spectrum, e.g. 2,1")
        sp.add_argument("--r", type=parse_list, required=True, help="squared norms, e.g. 1,1,1")

    sp = sub.add_parser("admissible", help="test whether a frame with spectrum lambda and norms r exists")
    spec_flags(sp)
    sp.add_argument("--tol", type=_positive_float, default=1e-10)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_admissible)

    for name, func, helptext in (
        ("synth", cmd_synth, "construct a frame"),
        ("random", cmd_random, "draw a randomized frame from the stratum"),
    ):
        sp = sub.add_parser(name, help=helptext)
        spec_flags(sp)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=func)

    sp = sub.add_parser("verify", help="check a frame file against lambda and r")
    sp.add_argument("--frame", required=True)
    spec_flags(sp)
    sp.add_argument("--tol", type=_positive_float, default=1e-9, help="spectrum tolerance")
    sp.add_argument("--norm-tol", type=_positive_float, default=1e-10)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("path", help="find a path between two frames of the same stratum")
    sp.add_argument("--from", dest="src", required=True)
    sp.add_argument("--to", dest="dst", required=True)
    sp.add_argument("--steps", type=int, default=64)
    sp.add_argument("--tol", type=_positive_float, default=1e-8)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-restarts", type=int, default=20)
    sp.add_argument("--out", default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_path)

    sp = sub.add_parser("embed", help="print the complex embedding of a matrix file")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_embed)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "steps", 2) < 2:
        sys.stderr.write("qframes: error: --steps must be at least 2\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"qframes: error: {exc}\n")
        return EXIT_USAGE
    except QFramesError as exc:
        sys.stderr.write(f"qframes: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
