"""Command line entry point: ``elko-kit {verify,spinor,boost,orbit}``.

Exit codes: 0 success, 1 at least one failed check (report still written),
2 usage error or degenerate momentum.
"""

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from . import clifford as cl
from . import spinors as sp
from . import boosts as bo
from . import toymodel as tm
from . import suites

AXES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}


class UsageError(ValueError):
    pass


def _vector(text):
    try:
        v = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    if len(v) != 3:
        raise argparse.ArgumentTypeError(f"expected three components, got {len(v)}")
    return np.array(v)


def _axis(text):
    if text.lower() in AXES:
        return np.array(AXES[text.lower()])
    v = _vector(text)
    if np.linalg.norm(v) == 0:
        raise argparse.ArgumentTypeError("axis must be non-zero")
    return v / np.linalg.norm(v)


def _sign(text):
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in table:
        raise argparse.ArgumentTypeError(f"expected + or -, got {text!r}")
    return table[text]


def _positive(kind):
    def conv(text):
        x = kind(text)
        if not x > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return x
    return conv


def _complex_list(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v).reshape(-1)]


def _quad_json(quad):
    return {f"{e:+d}{n:+d}": _complex_list(quad[(e, n)]) for e, n in sp.LABELS}


def build_parser():
    ap = argparse.ArgumentParser(prog="elko-kit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and write a JSON report")
    v.add_argument("--suite", choices=["core", "poincare", "boost", "toy", "all"], default="all")
    v.add_argument("--mass", type=_positive(float), default=1.0)
    v.add_argument("--samples", type=_positive(int), default=200)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tol", type=_positive(float), default=None,
                   help="override every check tolerance (controls keep theirs)")
    v.add_argument("--out", default=None, help="report path (default: standard output)")
    v.add_argument("--reproducible", action="store_true", help="omit the timestamp")
    v.add_argument("--energy-sign", type=_sign, default=1)
    v.add_argument("--format", choices=["json", "text"], default="json")
    v.add_argument("--corrupt-generator", action="store_true",
                   help="debug: scale the matrix part of J'_01 by 1.01")

    s = sub.add_parser("spinor", help="print one ELKO spinor as JSON")
    s.add_argument("--mass", type=_positive(float), default=1.0)
    s.add_argument("--p", type=_vector, required=True)
    s.add_argument("--eps", type=_sign, required=True)
    s.add_argument("--nu", type=_sign, required=True)
    s.add_argument("--dirac", action="store_true", help="also print the Dirac counterpart")

    b = sub.add_parser("boost", help="boost the ELKO quad at p and print the result")
    b.add_argument("--mass", type=_positive(float), default=1.0)
    b.add_argument("--p", type=_vector, default=np.array([0.3, -0.4, 1.2]))
    b.add_argument("--theta", type=float, required=True)
    b.add_argument("--axis", type=_axis, default=np.array(AXES["z"]))
    b.add_argument("--method", choices=["closed", "ode"], default="closed")
    b.add_argument("--compare", action="store_true", help="report closed-form vs flow difference")

    o = sub.add_parser("orbit", help="kernel of the toy equation on the sign orbit of p")
    o.add_argument("--mass", type=_positive(float), default=1.0)
    o.add_argument("--p", type=_vector, required=True)
    o.add_argument("--p0", type=float, default=None, help="energy (default: on shell)")
    o.add_argument("--tol", type=_positive(float), default=1e-10)
    return ap


def cmd_verify(args, out=None):
    out = out or sys.stdout
    ctx = suites.Context(args.mass, args.samples, args.seed, args.tol, args.energy_sign,
                         args.corrupt_generator)
    rows, measured = suites.run(args.suite, ctx)
    c = cl.build_basis()
    meta = {
        "tool-version": __version__,
        "suite": args.suite,
        "mass": args.mass,
        "seed": args.seed,
        "samples": args.samples,
        "tolerance": args.tol if args.tol is not None else "per-check",
        "corrupted-generator": bool(args.corrupt_generator),
        "convention": {
            "gamma5-sign": cl.gamma5_convention(),
            "gamma5-calibration-sign": c.gamma5_sign,
            "energy-sign": "+" if args.energy_sign > 0 else "-",
            "phase-c": measured.get("phase-c", _phase()),
            "lie4-typo-corrected": True,
            "infi-reading": measured.get("infi-reading", "not-run"),
            "boost-reading": measured.get("boost-reading"),
            "assembled-reading": measured.get("assembled-reading"),
            "commutation-relations": "standard Poincare relations, metric (+,-,-,-)",
        },
        "measured": {k: v for k, v in measured.items()
                     if k not in ("phase-c", "infi-reading", "boost-reading", "assembled-reading")},
    }
    if not args.reproducible:
        meta["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    report = {"meta": meta, "pass": all(r.passed for r in rows),
              "checks": [r.to_dict() for r in rows]}
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:42s} {r.max_residual:10.3e}  "
                 f"tol {r.tolerance:.0e}  failed {r.samples_failed}" for r in rows]
        lines.append(f"overall: {'PASS' if report['pass'] else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0 if report["pass"] else 1


def _phase():
    c, _ = tm.gamma5pct_phase()
    return [float(c.real), float(c.imag)]


def cmd_spinor(args, out=None):
    out = out or sys.stdout
    psi = sp.elko(args.p, args.mass, args.eps, args.nu)
    obj = sp.spinor_to_json(psi, args.p, args.mass, args.eps, args.nu)
    if args.dirac:
        obj["dirac_counterpart"] = _complex_list(sp.dirac_counterpart(args.p, args.mass, args.eps, args.nu))
    out.write(json.dumps(obj, indent=2) + "\n")
    return 0


def cmd_boost(args, out=None):
    out = out or sys.stdout
    m, p = args.mass, args.p
    quad = sp.elko_quad(p, m)
    p2, E2 = bo.boost_momentum(p, m, args.theta, args.axis)
    if args.method == "closed":
        _, res = bo.boost_closed(quad, p, m, args.theta, args.axis)
    else:
        _, res = bo.boost_flow(quad, p, m, args.theta, args.axis)
        res = {l: v[0] for l, v in res.items()}
    obj = {
        "m": m,
        "theta": args.theta,
        "axis": [float(x) for x in args.axis],
        "method": args.method,
        "input": {"p": [float(x) for x in p], "E": float(np.sqrt(p @ p + m * m)),
                  "quad": _quad_json(quad)},
        "boosted": {"p": [float(x) for x in p2], "E": float(E2), "quad": _quad_json(res)},
    }
    if args.compare:
        _, closed = bo.boost_closed(quad, p, m, args.theta, args.axis)
        _, flow = bo.boost_flow(quad, p, m, args.theta, args.axis)
        scale = max(np.linalg.norm(quad[l]) for l in sp.LABELS)
        obj["closed_vs_ode_max_difference"] = max(
            float(np.linalg.norm(closed[l] - flow[l][0]) / scale) for l in sp.LABELS)
    out.write(json.dumps(obj, indent=2) + "\n")
    return 0


def cmd_orbit(args, out=None):
    out = out or sys.stdout
    m = args.mass
    ker = tm.solve_toymodel(args.p, m, args.p0, args.tol)
    base = tm.orbit_field(args.p, m, args.p0)
    obj = {
        "m": m,
        "p": [float(x) for x in args.p],
        "p0": base.p0,
        "on_shell": bool(abs(base.p0 ** 2 - args.p @ args.p - m * m) <= 1e-12 * max(1.0, base.p0 ** 2)),
        "kernel_dimension": len(ker),
        "phase_c": _phase(),
        "basis": [f.to_json()["values"] for f in ker],
    }
    if ker:
        proj = tm.toy_projections(ker[0])
        obj["projections_of_first_basis_element"] = {
            f"{e:+d}{l:+d}": v.to_json()["values"] for (e, l), v in proj.items()}
    out.write(json.dumps(obj, indent=2) + "\n")
    return 0


COMMANDS = {"verify": cmd_verify, "spinor": cmd_spinor, "boost": cmd_boost, "orbit": cmd_orbit}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        return COMMANDS[args.command](args)
    except cl.DegenerateMomentum as e:
        print(f"elko-kit: degenerate momentum: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
