"""Command-line interface: ``framedcurves {generate,frame,invariants,verify,energy}``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import curves, formats
from .core import SPEED_TOL, UnitTangentField, default_eps_kappa, interior, unit_tangent
from .errors import FramingError, NoRegularNodes, NotOrthonormal, NotUnitSpeed
from .expr import parse_polynomial
from .frenet import frenet_frame
from .invariants import compare_frenet_rpaf, complex_density, extract_invariants, framed_energy
from .rpaf import default_normals, solve_volterra_densities
from .verification import Tolerances, run_verification

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

# Command-line names of the torsion sign conventions:
#   sec2: b' = +tau n      sec4: b' = -tau n
CONVENTION_NAMES = {"sec2": "plus", "sec4": "minus"}


def _vector(text):
    try:
        v = np.array([float(c) for c in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}") from None
    if v.shape != (3,):
        raise argparse.ArgumentTypeError(f"expected three components, got {text!r}")
    return v


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def _sibling(out, suffix):
    if out is None or str(out) == "-":
        return None
    p = Path(out)
    return p.with_name(p.stem + suffix)


def _load_curve(args):
    return formats.load_curve(args.curve, resample=args.resample, n=args.n)


def _eps(args, grid):
    return default_eps_kappa(grid) if args.eps_kappa is None else args.eps_kappa


def _initial_normals(args, t0):
    if args.d1 is None:
        return default_normals(t0)
    d1 = args.d1
    if abs(np.linalg.norm(d1) - 1.0) > 1e-6 or abs(d1 @ t0) > 1e-6:
        raise NotOrthonormal(
            f"--d1 must be a unit vector orthogonal to t(0) = {np.array2string(t0, precision=9)}"
        )
    d1 = d1 - (d1 @ t0) * t0
    d1 /= np.linalg.norm(d1)
    return d1, np.cross(t0, d1)


def cmd_generate(args):
    params = {
        "line": {"length": args.length},
        "circle": {"radius": args.radius},
        "helix": {"radius": args.radius, "pitch": args.pitch, "turns": args.turns},
        "trefoil": {"scale": args.scale},
    }[args.kind]
    spec = curves.CurveSpec(args.kind, args.n or 1024, params)
    formats.write_curve(args.out, curves.generate(spec))
    return EXIT_OK


def cmd_frame(args):
    curve = _load_curve(args)
    convention = CONVENTION_NAMES[args.convention]
    if args.method == "frenet":
        fr = frenet_frame(curve, _eps(args, curve.grid), convention, args.speed_tol)
        if not fr.regular_mask.any():
            _warn("curvature vanishes everywhere; Frenet normals are undefined")
        formats.write_frenet(args.out, fr)
        return EXIT_OK
    t_field = unit_tangent(curve, args.speed_tol)
    d1, d2 = _initial_normals(args, t_field.values[0])
    dens, frame = solve_volterra_densities(t_field, d1, d2)
    formats.write_frame(args.out, frame)
    density_out = args.density_out or _sibling(args.out, ".densities.csv")
    if density_out is not None:
        formats.write_densities(density_out, dens)
    return EXIT_OK


def _invariant_stats(inv):
    valid = inv.valid_mask
    inner = np.zeros_like(valid)
    inner[interior(len(valid))] = True
    tau = inv.tau[valid & inner & np.isfinite(inv.tau)]
    return {
        "valid_nodes": int(np.count_nonzero(valid)),
        "kappa_mean": float(np.mean(inv.kappa)),
        "kappa_max": float(np.max(inv.kappa)),
        "tau_abs_mean": float(np.mean(np.abs(tau))) if tau.size else None,
        "tau_mean": float(np.mean(tau)) if tau.size else None,
    }


def cmd_invariants(args):
    header = formats.sniff_header(args.input)
    report = {}
    if header[:3] == list(formats.DENSITY_COLUMNS[:3]):
        dens = formats.load_densities(args.input)
        inv = extract_invariants(complex_density(dens), _eps(args, dens.grid))
        report["source"] = "densities"
    else:
        args.curve = args.input
        curve = _load_curve(args)
        eps = _eps(args, curve.grid)
        t_field = unit_tangent(curve, args.speed_tol)
        dens, _ = solve_volterra_densities(t_field, *default_normals(t_field.values[0]))
        inv = extract_invariants(complex_density(dens), eps)
        report["source"] = "curve"
        try:
            cmp = compare_frenet_rpaf(
                curve, eps, CONVENTION_NAMES[args.convention], speed_tol=args.speed_tol
            )
            report["frenet_comparison"] = cmp.summary()
        except NoRegularNodes as exc:
            _warn(f"no Frenet comparison: {exc}")
    report.update(_invariant_stats(inv))
    if not inv.valid_mask.any():
        _warn("curvature is below threshold everywhere; phase and torsion are masked")
    formats.write_invariants(args.out, inv)
    report_out = args.report or _sibling(args.out, ".report.json")
    if report_out is not None:
        formats.write_report(report_out, report, args.format or "json")
    return EXIT_OK


def cmd_verify(args):
    header = formats.sniff_header(args.curve)
    if header == list(formats.FRAME_COLUMNS):
        frame = formats.load_frame(args.curve)
        source = UnitTangentField(frame.grid, frame.t)
    else:
        source = _load_curve(args)
    tol = Tolerances(
        modulus_gap=args.tol_modulus,
        phase_stdev=args.tol_phase,
        phase_mean=args.tol_phase,
        angle_stdev=args.tol_angle,
        gram=args.tol_gram,
        roundtrip=args.tol_roundtrip,
    )
    eps = _eps(args, source.grid)
    result = run_verification(source, args.alpha, args.seed, eps, tol, args.speed_tol)
    formats.write_report(args.out, result.report, args.format or "json")
    if not result.passed:
        print("verification failed: " + ", ".join(result.failed), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_energy(args):
    f = parse_polynomial(args.f)
    curve = _load_curve(args)
    fr = frenet_frame(curve, _eps(args, curve.grid), CONVENTION_NAMES[args.convention], args.speed_tol)
    print(f"{framed_energy(fr.frame(), f):.9g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of samples (generate, or resampling target)")
    common.add_argument("--resample", action="store_true", help="resample input by arc length")
    common.add_argument("--eps-kappa", type=float, help="curvature masking threshold (default 1e-6/L)")
    common.add_argument(
        "--convention", choices=sorted(CONVENTION_NAMES), default="sec2",
        help="torsion sign: sec2 means b'=+tau n, sec4 means b'=-tau n",
    )
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="report format")
    common.add_argument("--speed-tol", type=float, default=SPEED_TOL, help="allowed |x'|-1")

    parser = argparse.ArgumentParser(prog="framedcurves", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="write an analytic test curve")
    p.add_argument("kind", choices=curves.KINDS)
    p.add_argument("--length", type=float, default=1.0)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--pitch", type=float, default=1.0, help="helix rise per radian")
    p.add_argument("--turns", type=float, default=1.0)
    p.add_argument("--scale", type=float, default=1.0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("frame", parents=[common], help="Frenet frame or relatively parallel frame")
    p.add_argument("curve")
    p.add_argument("--method", choices=("frenet", "rpaf"), default="rpaf")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--d1", type=_vector, help="initial normal x,y,z (unit, orthogonal to t(0))")
    g.add_argument("--auto", action="store_true", help="pick the initial normal automatically")
    p.add_argument("--density-out", help="density CSV path (default: next to --out)")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("invariants", parents=[common], help="curvature, phase and torsion table")
    p.add_argument("input", help="density CSV (s,u1,u2[,u3]) or curve CSV")
    p.add_argument("--report", help="report path (default: next to --out)")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", parents=[common], help="run the invariance checks")
    p.add_argument("curve", help="curve CSV or frame CSV")
    p.add_argument("--alpha", type=float, default=np.pi / 3)
    p.add_argument("--seed", type=int, default=0)
    defaults = Tolerances()
    p.add_argument("--tol-modulus", type=float, default=defaults.modulus_gap)
    p.add_argument("--tol-phase", type=float, default=defaults.phase_stdev)
    p.add_argument("--tol-angle", type=float, default=defaults.angle_stdev)
    p.add_argument("--tol-gram", type=float, default=defaults.gram)
    p.add_argument("--tol-roundtrip", type=float, default=defaults.roundtrip)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("energy", parents=[common], help="integrate f(kappa, tau) along the Frenet frame")
    p.add_argument("curve")
    p.add_argument("--f", required=True, help="polynomial in kappa and tau, e.g. 'kappa^2 + tau^2'")
    p.set_defaults(func=cmd_energy)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotUnitSpeed as exc:
        print(f"error: NotUnitSpeed: {exc} (try --resample)", file=sys.stderr)
    except FramingError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
