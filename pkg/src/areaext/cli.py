"""Command-line front end: ``areaext <subcommand> ...``.

Exit status is 0 on success, 1 when a certificate fails or a condition is
infeasible, and 2 on malformed input.  JSON reports print floats with 17
significant digits, so equal inputs and seeds give byte-identical output.

Tolerances can be overridden through environment variables (unset by
default): ``AREAEXT_FEASIBILITY_RTOL`` for the star-shift feasibility slack
and ``AREAEXT_CHECK_RTOL`` for the spinor-endomorphism checks.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import boundary, exterior, families, thorpe, topology, weitzenbock

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

TOLERANCE_ENV = {
    "AREAEXT_FEASIBILITY_RTOL": (thorpe, "FEASIBILITY_RTOL"),
    "AREAEXT_CHECK_RTOL": (weitzenbock, "CHECK_RTOL"),
}


class InputError(Exception):
    pass


# --- output -----------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float written as ``%.17g``; non-finite floats become null."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(k)}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, list):
            if not o:
                return "[]"
            if all(not isinstance(v, (dict, list)) for v in o):
                return "[" + ", ".join(enc(v, level) for v in o) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in o) + "\n" + end + "]"
        if isinstance(o, bool) or o is None:
            return json.dumps(o)
        if isinstance(o, float):
            return "%.17g" % o if math.isfinite(o) else "null"
        return json.dumps(o)

    return enc(_plain(obj), 0)


def _emit(args, report: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(dumps(report))
    else:
        print("\n".join(text_lines))


def _fmt(x) -> str:
    if x is None:
        return "n/a"
    return f"{x:.10g}"


# --- input ------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _field(doc: dict, name: str, path: str):
    if not isinstance(doc, dict) or name not in doc:
        raise InputError(f"{path}: field '{name}' is missing")
    return doc[name]


def _matrix(value, shape, name: str, path: str) -> np.ndarray:
    try:
        m = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{path}: field '{name}' is not a numeric matrix") from None
    if m.shape != shape:
        raise InputError(f"{path}: field '{name}' must have shape {shape}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError(f"{path}: field '{name}' has non-finite entries")
    return m


def _number(value, name: str, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{path}: field '{name}' must be a number")
    return float(value)


def _curvature(doc, path: str, name: str = "curvature") -> np.ndarray:
    try:
        return exterior.curvature_from_json(doc)
    except exterior.CurvatureOperatorError as exc:
        raise InputError(f"{path}: {name}: {exc}") from None


# --- subcommands --------------------------------------------------------------


def cmd_ft_check(args) -> int:
    r = _curvature(_load_json(args.curvature), args.curvature)
    cert = thorpe.sec_nonneg(r, orientation=args.orientation, density=args.density)
    iv = cert.interval
    report = cert.to_dict()
    lines = []
    if iv.empty:
        lines.append("tau interval: empty")
        lines.append(f"peak min eigenvalue: {_fmt(iv.peak_value)} at tau = {_fmt(iv.peak_tau)}")
        lines.append(f"counterexample plane (K basis): {np.array2string(cert.counterexample.sigma, precision=6)}")
        lines.append(f"sec on that plane: {_fmt(cert.counterexample_sec)}")
    else:
        lines.append(f"tau interval: [{_fmt(iv.tau_min)}, {_fmt(iv.tau_max)}]")
        lines.append(f"feasible tau: {_fmt(cert.feasible_tau)}")
        lines.append(f"strict: {'yes' if iv.strict else 'no'}")
    _emit(args, report, lines)
    return EXIT_OK if cert.nonnegative else EXIT_FAIL


def cmd_sec_scan(args) -> int:
    r = _curvature(_load_json(args.curvature), args.curvature)
    lo, p_lo = exterior.sec_min_bruteforce(r, args.density)
    hi, p_hi = exterior.sec_max_bruteforce(r, args.density)
    report = {
        "density": args.density,
        "secMin": lo,
        "argmin": p_lo.to_dict(),
        "secMax": hi,
        "argmax": p_hi.to_dict(),
    }
    lines = [
        f"grid: {args.density} x {args.density}",
        f"min sec: {_fmt(lo)}",
        f"max sec: {_fmt(hi)}",
    ]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_verify_lemmas(args) -> int:
    results = weitzenbock.lemma_sweep(args.samples, args.seed)
    report = {"samples": args.samples, "seed": args.seed, "checks": [r.to_dict() for r in results]}
    lines = [f"{'check':<18}{'samples':>8}{'failures':>10}{'worst margin':>16}"]
    for r in results:
        lines.append(f"{r.name:<18}{r.samples:>8}{r.failures:>10}{r.worst:>16.3e}")
    _emit(args, report, lines)
    return EXIT_OK if all(r.failures == 0 for r in results) else EXIT_FAIL


def cmd_extremal_cert(args) -> int:
    path = args.pointdata
    doc = _load_json(path)
    r = _curvature(_field(doc, "R_M", path), path, "R_M")
    tau = _number(_field(doc, "tau", path), "tau", path)
    scal_n = _number(_field(doc, "scal_N", path), "scal_N", path)
    l = _matrix(_field(doc, "l", path), (4, 4), "l", path)
    try:
        rep = weitzenbock.extremality_certificate(r, tau, scal_n, l)
    except weitzenbock.PreconditionError as exc:
        report = {"ok": False, "precondition": exc.what, "value": exc.quantity}
        _emit(args, report, [f"precondition failed: {exc}"])
        return EXIT_FAIL
    report = rep.to_dict()
    lines = [
        f"area-nonincreasing: {'yes' if rep.area_nonincreasing else 'no'}",
        f"scal_N >= scal_M: {'yes' if rep.scal_inequality else 'no'}",
        f"trace bound slack: {_fmt(rep.trace_bound)}",
        f"min eig T(R + tau*, L) on S+S+: {_fmt(rep.t_shift_min)}",
        f"min eig -tau T(*, L) on S+S+: {_fmt(rep.t_star_min)}",
        f"min eig T(R, L) on S+S+: {_fmt(rep.t_psd_min)}",
        f"Weitzenboeck gap: {_fmt(rep.weitzenboeck_gap)}",
        f"rigidity hypotheses: {'hold' if rep.rigidity_flag else 'fail'}",
        f"l is an isometry: {'yes' if rep.isometry else 'no'}",
    ] + [f"note: {n}" for n in rep.notes]
    _emit(args, report, lines)
    return EXIT_OK if rep.gap_ok else EXIT_FAIL


def cmd_boundary_cert(args) -> int:
    path = args.bdata
    doc = _load_json(path)
    ii = _matrix(_field(doc, "II", path), (3, 3), "II", path)
    h_n = _number(_field(doc, "H_N", path), "H_N", path)
    frame = normal = None
    if "frame" in doc or "normal" in doc:
        frame = _matrix(_field(doc, "frame", path), (4, 3), "frame", path)
        normal = _matrix(_field(doc, "normal", path), (4,), "normal", path)
    try:
        bd = boundary.BoundaryData(ii, h_n, frame, normal)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    q = boundary.build_Q(bd)
    try:
        boundary.check_convexity(bd)
        convex = True
    except weitzenbock.PreconditionError:
        convex = False
    bound = boundary.mean_curvature_bound(bd, check_hypothesis=False)
    tol = 1e-9 * (1.0 + float(np.linalg.norm(ii)))
    report = {
        "qSpectrum": boundary.q_spectrum(bd),
        "traceQ": float(np.trace(q)),
        "traceII": bd.mean_curvature_m,
        "bianchiResidualQ": exterior.bianchi_residual(q),
        "convex": convex,
        "H_N": h_n,
        "H_M": bd.mean_curvature_m,
        "boundMinEigenvalue": bound,
        "boundOk": bound >= -tol,
    }
    lines = [
        f"Q spectrum: {np.array2string(report['qSpectrum'], precision=6)}",
        f"trace Q = {_fmt(report['traceQ'])}, trace II = {_fmt(report['traceII'])}",
        f"Bianchi residual of Q: {report['bianchiResidualQ']:.3e}",
        f"II positive semidefinite: {'yes' if convex else 'no'}",
        f"bound min eigenvalue on S+S+: {_fmt(bound)}",
    ]
    _emit(args, report, lines)
    return EXIT_OK if (convex and bound >= -tol) else EXIT_FAIL


def cmd_index(args) -> int:
    try:
        t = topology.TopologyData(
            euler_m=args.chiM,
            sigma_m=args.sigmaM,
            sigma_n=args.sigmaN,
            deg=args.deg,
            b0_dm=args.b0dM,
            b2_dm=args.b2dM,
            b2_m=args.b2M,
        )
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", topology.NonIntegerIndexWarning)
            if args.boundary:
                value = topology.index_boundary(t)
            else:
                value = topology.index_closed(t)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    preds = topology.class_predicates(t)
    integral = value.denominator == 1
    report = {
        "case": "boundary" if args.boundary else "closed",
        "index": str(value),
        "integer": integral,
        "classes": preds,
    }
    lines = [f"index = {value}"]
    if not integral:
        lines.append("warning: index is not an integer; check the input data")
    for name, v in preds.items():
        lines.append(f"{name}: {'n/a' if v is None else ('yes' if v else 'no')}")
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(args, report, lines)
    return EXIT_OK


def cmd_zoo(args) -> int:
    if args.name not in families.ZOO:
        raise InputError(f"unknown family {args.name!r}; choose from {', '.join(families.ZOO)}")
    d = families.ZOO[args.name]()
    doc = exterior.curvature_to_json(d.R, args.basis)
    doc["label"] = d.label
    text = dumps(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_cheeger(args) -> int:
    try:
        p = families.gz_profile(args.b, args.r0, args.rmax)
    except families.ProfileError as exc:
        raise InputError(str(exc)) from None
    rows = []
    ok = True
    for r in np.linspace(0.0, 2.0 * args.rmax, args.samples):
        d = families.cheeger_glued(p, float(r))
        iv = thorpe.tau_interval(d.R)
        ric = np.linalg.eigvalsh(d.ric)
        good = (not iv.empty) and d.tau <= 1e-12
        ok &= good
        rows.append(
            {
                "r": float(r),
                "tau": d.tau,
                "tauMin": None if iv.empty else iv.tau_min,
                "tauMax": None if iv.empty else iv.tau_max,
                "scal": d.scal,
                "ricEigenvalues": ric,
                "neck": bool(d.extras["neck"]),
                "secNonneg": not iv.empty,
            }
        )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "tau", "tauMin", "tauMax", "scal", "ric1", "ric2", "ric3", "ric4", "neck"])
            for row in rows:
                w.writerow(
                    ["%.17g" % row["r"], "%.17g" % row["tau"], row["tauMin"], row["tauMax"],
                     "%.17g" % row["scal"], *("%.17g" % x for x in row["ricEigenvalues"]),
                     int(row["neck"])]
                )
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "tau", "scal", "neck"])
        for row in rows:
            w.writerow(["%.17g" % row["r"], "%.17g" % row["tau"], "%.17g" % row["scal"], int(row["neck"])])
        sys.stdout.write(buf.getvalue())
        return EXIT_OK if ok else EXIT_FAIL
    report = {"b": p.b, "r0": p.r0, "rmax": p.rmax, "mu": p.mu, "points": rows, "allFeasible": ok}
    taus = [row["tau"] for row in rows]
    lines = [
        f"profile: b = {_fmt(p.b)}, r0 = {_fmt(p.r0)}, rmax = {_fmt(p.rmax)} (mu = {_fmt(p.mu)})",
        f"points: {len(rows)}, neck points: {sum(row['neck'] for row in rows)}",
        f"tau range: [{_fmt(min(taus))}, {_fmt(max(taus))}]",
        f"sec >= 0 everywhere: {'yes' if ok else 'no'}",
    ]
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_FAIL


# --- parser -------------------------------------------------------------------


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _orientation(text: str) -> int:
    v = int(text)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("must be 1 or -1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=_positive_int, default=500)

    ap = argparse.ArgumentParser(prog="areaext", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ft-check", parents=[common], help="tau interval and sec >= 0 certificate")
    p.add_argument("curvature")
    p.add_argument("--orientation", type=_orientation, default=1)
    p.add_argument("--density", type=_positive_int, default=thorpe.BRUTE_DENSITY)
    p.set_defaults(func=cmd_ft_check)

    p = sub.add_parser("sec-scan", parents=[common], help="brute-force sectional curvature range")
    p.add_argument("curvature")
    p.add_argument("--density", type=_positive_int, default=100)
    p.set_defaults(func=cmd_sec_scan)

    p = sub.add_parser("verify-lemmas", parents=[common], help="random sweep of the spinor identities")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("extremal-cert", parents=[common], help="pointwise extremality certificate")
    p.add_argument("pointdata")
    p.set_defaults(func=cmd_extremal_cert)

    p = sub.add_parser("boundary-cert", parents=[common], help="boundary mean-curvature bound")
    p.add_argument("bdata")
    p.set_defaults(func=cmd_boundary_cert)

    p = sub.add_parser("index", parents=[common], help="index and class membership")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--closed", action="store_true")
    g.add_argument("--boundary", action="store_true")
    p.add_argument("--chiM", type=int)
    p.add_argument("--sigmaM", type=int)
    p.add_argument("--sigmaN", type=int)
    p.add_argument("--deg", type=int)
    p.add_argument("--b0dM", type=int)
    p.add_argument("--b2dM", type=int)
    p.add_argument("--b2M", type=int)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("zoo", parents=[common], help="emit a model curvature operator as JSON")
    p.add_argument("name", help=", ".join(families.ZOO))
    p.add_argument("--basis", choices=["K", "SDASD"], default="K")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("cheeger", parents=[common], help="sweep the glued disk-bundle metric")
    p.add_argument("--r0", type=float, default=10.0)
    p.add_argument("--rmax", type=float, default=12.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--csv", help="also write a CSV file for plotting")
    p.set_defaults(func=cmd_cheeger, samples=201)
    return ap


def _apply_tolerance_env() -> None:
    for var, (mod, attr) in TOLERANCE_ENV.items():
        raw = os.environ.get(var)
        if raw is None or raw == "":
            continue
        try:
            val = float(raw)
        except ValueError:
            raise InputError(f"environment variable {var}: not a number: {raw!r}") from None
        if not (val > 0 and math.isfinite(val)):
            raise InputError(f"environment variable {var}: must be positive")
        setattr(mod, attr, val)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _apply_tolerance_env()
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
