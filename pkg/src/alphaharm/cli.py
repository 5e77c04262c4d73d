"""Command-line interface: ``alphaharm <subcommand> [options]``.

Exit status: 0 success, 1 a mathematically guaranteed identity failed (a
library bug), 2 usage or data error.  Bounds that depend on a user-declared
``M`` only produce warnings.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from . import dirichlet as dl
from .analysis import (alpha_harmonicity_residual, step_boundary, lipschitz_check,
                       schwarz_pick_check, wirtinger_arrays)
from .errors import AlphaHarmError, DomainError, InvariantError
from .kernel import integral_means, kernel_modulus, kernel_wirtinger, poisson_kernel
from .landau import (LandauInputs, growth_bound_check, solve_rho0, univalence_probe)
from .sampling import disk_points, random_in_disk, random_unit_function
from .special import AlphaParam

logger = logging.getLogger("alphaharm")

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2
DUAL_PATH_TOL = 1e-9
FD_TOL = 1e-6
RESIDUAL_TOL = 1e-6
VERIFY_ALPHAS = (0.0, 1.0, 2.5)


class UsageError(AlphaHarmError):
    pass


# -------------------------------------------------------------- output ---


def _write(doc, rows, args):
    if args.format == "csv":
        if rows is None:
            raise UsageError(f"'{args.command}' has no tabular form; use --format json")
        buf = io.StringIO()
        keys = list(rows[0]) if rows else []
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: repr(float(v)) if isinstance(v, float) else v for k, v in row.items()})
        text = buf.getvalue()
    else:
        text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cx(z):
    return [float(z.real), float(z.imag)]


def _parse_z(pairs):
    if not pairs:
        return None
    return np.array([complex(float(a), float(b)) for a, b in pairs])


def _load_function(args, require=True):
    """A function from ``--input``: a solved coefficient file or boundary data."""
    if not args.input:
        if require:
            raise UsageError("--input is required")
        return None, None
    doc = dl.load_json(args.input)
    if doc.get("kind") == "alpha_harmonic":
        f = dl.function_from_dict(doc)
        if args.alpha is not None and float(args.alpha) != float(f.alpha):
            raise UsageError("--alpha conflicts with the alpha stored in the function file")
        return f, None
    boundary, alpha = dl.boundary_from_dict(doc)
    if args.alpha is not None:
        alpha = AlphaParam(args.alpha)
    if alpha is None:
        raise UsageError("boundary file carries no alpha; pass --alpha")
    return dl.solve_dirichlet(alpha, boundary), boundary


def dual_path_gap(f, boundary=None, points=None):
    boundary = f.boundary() if boundary is None else boundary
    z = disk_points() if points is None else points
    gap = np.abs(dl.evaluate_series(f, z) - dl.evaluate_poisson(f.alpha, boundary, z))
    return float(gap.max())


# ------------------------------------------------------------ commands ---


def cmd_kernel(args):
    alpha = AlphaParam(args.alpha)
    z = complex(*args.z)
    val = complex(poisson_kernel(alpha, z, args.theta))
    pair = kernel_wirtinger(alpha, z, args.theta)
    row = {"alpha": float(alpha), "z_re": z.real, "z_im": z.imag, "theta": args.theta,
           "value_re": val.real, "value_im": val.imag, "K": float(kernel_modulus(alpha, z, args.theta)),
           "fz_re": pair.fz.real, "fz_im": pair.fz.imag,
           "fzbar_re": pair.fzbar.real, "fzbar_im": pair.fzbar.imag}
    _write(row, [row], args)
    return EXIT_OK


def _radii(args):
    if args.radii:
        return [float(r) for r in args.radii.split(",")]
    return [round(0.05 * i, 2) for i in range(20)]


def cmd_means(args):
    alpha = AlphaParam(args.alpha)
    rows = []
    for r in _radii(args):
        m = integral_means(alpha, r, args.nodes)
        rows.append({"alpha": float(alpha), "r": m.r, "value": m.value, "nodes": m.quadrature_nodes})
    _write({"alpha": float(alpha), "means": rows}, rows, args)
    return EXIT_OK


def cmd_solve(args):
    f, boundary = _load_function(args)
    if boundary is None:
        raise UsageError("solve expects boundary data, got a function file")
    gap = dual_path_gap(f, boundary, disk_points(args.points))
    doc = dl.function_to_dict(f)
    doc["agreement"] = {"points": args.points, "max_abs_diff": gap}
    rows = [dict(r, kind="coefficient") for r in doc["coefficients"]]
    _write(doc, rows, args)
    if gap > DUAL_PATH_TOL:
        logger.error("series and Poisson-integral routes disagree by %.3e", gap)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_eval(args):
    f, boundary = _load_function(args)
    z = _parse_z(args.z)
    z = disk_points(args.points) if z is None else z
    series = np.atleast_1d(dl.evaluate_series(f, z))
    poisson = np.atleast_1d(dl.evaluate_poisson(f.alpha, boundary or f.boundary(), z))
    rows = [{"z_re": a.real, "z_im": a.imag, "series_re": s.real, "series_im": s.imag,
             "poisson_re": p.real, "poisson_im": p.imag, "abs_diff": float(abs(s - p))}
            for a, s, p in zip(z, series, poisson)]
    _write({"alpha": float(f.alpha), "points": rows}, rows, args)
    return EXIT_OK


def cmd_coeffs(args):
    if args.step:
        boundary = step_boundary(args.degree)
    elif args.input:
        values = _read_samples(args.input)
        boundary = dl.project_samples(values, args.degree)
    else:
        raise UsageError("coeffs needs --input samples.csv or --step")
    doc = dl.boundary_to_dict(boundary, args.alpha)
    _write(doc, doc["coefficients"], args)
    return EXIT_OK


def _read_samples(path):
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            vals = [complex(float(r["re"]), float(r.get("im") or 0.0)) for r in reader]
    except (OSError, KeyError, ValueError, TypeError) as exc:
        raise DomainError(f"cannot read boundary samples from {path}: {exc}") from exc
    if not vals:
        raise DomainError(f"no samples in {path}")
    return np.array(vals)


def cmd_bounds(args):
    f, _ = _load_function(args)
    rep = dl.check_coefficient_bounds(f, M=args.M)
    if not rep.passed:
        logger.warning("%d coefficient-bound violations: M = %g does not bound |f|",
                       len(rep.violations), rep.M)
    doc = rep.as_dict()
    _write(doc, doc["rows"], args)
    return EXIT_OK


def cmd_landau(args):
    f, _ = _load_function(args, require=False)
    if f is not None:
        if args.M is not None:
            f = f.with_sup(args.M)
        inputs = LandauInputs.from_function(f, relaxed=args.relaxed)
    else:
        if None in (args.alpha, args.M, args.beta):
            raise UsageError("landau needs --alpha, --M and --beta, or --input")
        inputs = LandauInputs(args.alpha, args.M, args.beta, relaxed=args.relaxed)
    result = solve_rho0(inputs)
    doc = result.as_dict()
    if args.probe:
        if f is None:
            raise UsageError("--probe needs a function (--input)")
        doc["probe"] = univalence_probe(f, 0.9 * result.rho0, inputs, args.probe, args.seed).as_dict()
        if not doc["probe"]["pass"]:
            logger.warning("univalence probe found violations; check the hypotheses on f")
    row = {k: v for k, v in doc.items() if k != "probe"}
    _write(doc, [row], args)
    return EXIT_OK


def _fd_gap(f, z, h=1e-5):
    fz, fzb = wirtinger_arrays(f, z)
    fx = (dl.evaluate_series(f, z + h) - dl.evaluate_series(f, z - h)) / (2 * h)
    fy = (dl.evaluate_series(f, z + 1j * h) - dl.evaluate_series(f, z - 1j * h)) / (2 * h)
    gap = np.maximum(np.abs(0.5 * (fx - 1j * fy) - fz), np.abs(0.5 * (fx + 1j * fy) - fzb))
    scale = max(1.0, float(np.max(np.abs(fz) + np.abs(fzb))))
    return float(gap.max()) / scale


def verify_function(f, boundary, rng, points):
    """Run every check on ``f``; invariant checks are process-failing."""
    interior = points[np.abs(points) < 0.9]
    invariants = {}
    invariants["dual_path"] = {"value": dual_path_gap(f, boundary, points), "tol": DUAL_PATH_TOL}
    invariants["wirtinger_fd"] = {"value": _fd_gap(f, interior), "tol": FD_TOL}
    scale = max(1.0, float(np.max(np.abs(f.coefficients))))
    invariants["alpha_harmonicity"] = {
        "value": max(alpha_harmonicity_residual(f, z) for z in interior) / scale,
        "tol": RESIDUAL_TOL}
    for v in invariants.values():
        v["pass"] = bool(v["value"] <= v["tol"])

    bounds = {}
    cb = dl.check_coefficient_bounds(f)
    bounds["coefficients"] = {"pass": cb.passed, "violations": len(cb.violations),
                              "worst_margin": min(r.margin for r in cb.rows)}
    for form in (1, 2):
        sp = schwarz_pick_check(f, points, form=form)
        bounds[f"schwarz_pick_{form}"] = {"pass": sp.passed, "violations": len(sp.violations),
                                          "worst_ratio": sp.worst_ratio}
    if f.declared_sup_M <= 1.0:
        pairs = np.stack([random_in_disk(rng, 100, 0.95), random_in_disk(rng, 100, 0.95)], axis=1)
        lp = lipschitz_check(f, pairs)
        bounds["lipschitz"] = {"pass": lp.passed, "violations": len(lp.violations),
                               "worst_ratio": lp.worst_ratio}
    else:
        bounds["lipschitz"] = {"skipped": "declared M exceeds 1"}
    flags = dl.normalization_flags(f)
    if flags.normalized and f.alpha >= 0.0:
        gb = growth_bound_check(f, flags, points)
        bounds["growth"] = {"pass": gb.passed, "violations": len(gb.violations)}
    else:
        bounds["growth"] = {"skipped": "normalization c_{-1}=0, c_{-2}=1 not met"}
    return {"alpha": float(f.alpha), "M": f.declared_sup_M, "degree": f.degree,
            "invariants": invariants, "bounds": bounds}


def cmd_verify(args):
    rng = np.random.default_rng(args.seed)
    points = disk_points(args.points)
    entries = []
    if args.input:
        f, boundary = _load_function(args)
        entries.append(verify_function(f, boundary, rng, points))
    else:
        alphas = [float(args.alpha)] if args.alpha is not None else VERIFY_ALPHAS
        for i in range(args.random):
            f = random_unit_function(alphas[i % len(alphas)], args.degree, rng)
            entries.append(verify_function(f, None, rng, points))
    failed = [i for i, e in enumerate(entries) if not all(v["pass"] for v in e["invariants"].values())]
    warned = [i for i, e in enumerate(entries)
              if not all(v.get("pass", True) for v in e["bounds"].values())]
    for i in warned:
        logger.warning("function %d: a hypothesis-dependent bound failed (declared M may be wrong)", i)
    doc = {"seed": args.seed, "functions": entries, "pass": not failed,
           "invariant_failures": failed, "bound_warnings": warned}
    rows = []
    for i, e in enumerate(entries):
        for name, v in e["invariants"].items():
            rows.append({"function": i, "check": name, "kind": "invariant", "pass": v["pass"]})
        for name, v in e["bounds"].items():
            rows.append({"function": i, "check": name, "kind": "bound", "pass": v.get("pass", "skipped")})
    _write(doc, rows, args)
    return EXIT_INVARIANT if failed else EXIT_OK


# -------------------------------------------------------------- parser ---


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input file")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--alpha", type=float, help="weight exponent, > -1")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--points", type=int, default=200, help="evaluation grid size")

    p = argparse.ArgumentParser(prog="alphaharm", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("kernel", parents=[common], help="evaluate P_alpha and its derivatives")
    s.add_argument("--z", nargs=2, type=float, default=(0.0, 0.0), metavar=("RE", "IM"))
    s.add_argument("--theta", type=float, default=0.0)
    s.set_defaults(func=cmd_kernel, need_alpha=True)

    s = sub.add_parser("means", parents=[common], help="integral means M_alpha(r)")
    s.add_argument("--radii", help="comma-separated radii (default 0, 0.05, ..., 0.95)")
    s.add_argument("--nodes", type=int, default=1024, help="initial angle count")
    s.set_defaults(func=cmd_means, need_alpha=True)

    s = sub.add_parser("solve", parents=[common], help="solve the Dirichlet problem")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("eval", parents=[common], help="evaluate by both routes")
    s.add_argument("--z", nargs=2, type=float, action="append", metavar=("RE", "IM"))
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("coeffs", parents=[common], help="project boundary samples to Fourier data")
    s.add_argument("--degree", type=int, default=64)
    s.add_argument("--step", action="store_true", help="use the sign(sin theta) boundary")
    s.set_defaults(func=cmd_coeffs)

    s = sub.add_parser("bounds", parents=[common], help="coefficient bound report")
    s.add_argument("--M", type=float, help="override the declared sup bound")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("landau", parents=[common], help="univalence radius rho0 and R0 bound")
    s.add_argument("--M", type=float)
    s.add_argument("--beta", type=float)
    s.add_argument("--relaxed", action="store_true", help="allow -1 < alpha < 0 (diagnostics)")
    s.add_argument("--probe", type=int, default=0, metavar="TRIALS")
    s.set_defaults(func=cmd_landau)

    s = sub.add_parser("verify", parents=[common], help="run the verification suite")
    s.add_argument("--random", type=int, default=10, help="random functions when no --input")
    s.add_argument("--degree", type=int, default=6)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if getattr(args, "need_alpha", False) and args.alpha is None:
        parser.error(f"{args.command} requires --alpha")
    try:
        return args.func(args)
    except InvariantError as exc:
        logger.error("%s", exc)
        return EXIT_INVARIANT
    except (AlphaHarmError, ValueError) as exc:
        print(f"alphaharm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
