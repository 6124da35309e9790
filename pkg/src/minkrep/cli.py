"""``mink-rep`` command line.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import integrals, suites
from .geometry import GeometryError, SpanClass, classify_span
from .hilbert import inner, inner_legacy
from .report import EXIT_IO, EXIT_USAGE, Report
from .representation import CheckReport, act
from .scene import SceneError, load_scene, state_to_doc


class UsageError(Exception):
    pass


def _scene(args):
    if not args.scene:
        raise UsageError("--scene is required for this command")
    return load_scene(args.scene)


def _lookup(mapping_fn, name, what):
    try:
        return mapping_fn(name)
    except KeyError:
        raise UsageError(f"unknown {what} {name!r}") from None


def cmd_classify(args) -> Report:
    scene = _scene(args)
    raw = _lookup(scene.term, args.name, "surface")
    tol = args.tol if args.tol is not None else 1e-10
    report = Report("classify")
    try:
        kind = classify_span(raw.span_u, raw.span_v, tol)
    except GeometryError as err:
        raise UsageError(f"surface {args.name}: {err}") from None
    report.info = {"surface": args.name, "class": str(kind)}
    if kind is not SpanClass.SPACE_LIKE:
        report.info["note"] = "only space-like surfaces are admitted; states using it are refused"
    report.add(CheckReport("admissible", kind is SpanClass.SPACE_LIKE, {"class": str(kind)}, tol))
    return report


def cmd_measure(args) -> Report:
    scene = _scene(args)
    raw = _lookup(scene.term, args.name, "surface")
    try:
        surface = raw.surface()
    except GeometryError as err:
        raise UsageError(f"surface {args.name}: {err}") from None
    tol = args.tol if args.tol is not None else integrals.SELF_CHECK_TOL
    closed = {"area": integrals.area, "mink": integrals.mink_area, "signed": integrals.mink_area_signed}[args.kind](surface)
    quad = integrals.measure_by_quadrature(surface, args.kind)
    delta = abs(closed - quad)
    report = Report("measure", info={"surface": args.name, "kind": args.kind, "value": closed})
    report.add(CheckReport("quadrature-self-check", bool(delta <= tol),
                           {"closed_form": closed, "quadrature": quad, "delta": float(delta)}, tol))
    return report


def cmd_inner(args) -> Report:
    scene = _scene(args)
    v = _lookup(scene.state, args.first, "state")
    w = _lookup(scene.state, args.second, "state")
    if v.n != w.n:
        raise UsageError("component counts differ")
    ip, legacy = inner(v, w), inner_legacy(v, w)
    return Report("inner", info={"states": [args.first, args.second], "inner": ip, "inner_legacy": legacy})


def cmd_act(args) -> Report:
    scene = _scene(args)
    g = _lookup(scene.transform, args.transform, "transform")
    v = _lookup(scene.state, args.state, "state")
    out = act(scene.config, g, v)
    name = f"{args.transform}.{args.state}"
    doc = {
        "n_components": scene.n,
        "config": {"h_hat": scene.config.h_hat, "p_hat": scene.config.p_hat},
        "states": [state_to_doc(name, out)],
    }
    text = json.dumps(doc, indent=2)
    if args.out in (None, "-"):
        print(text)
    else:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as err:
            raise IOError(err) from err
    return Report("act", info={"state": name, "terms": len(out.terms), "out": args.out or "-"})


def cmd_verify(args) -> Report:
    cfg = load_scene(args.scene).config if args.scene else None
    checks = suites.run(args.suite, seed=args.seed, trials=args.trials, cfg=cfg, tol=args.tol)
    report = Report("verify", info={"suite": args.suite, "seed": args.seed, "trials": args.trials})
    for c in checks:
        report.add(c)
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", help="scene JSON file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--tol", type=float, default=None, help="override the check tolerance")

    parser = argparse.ArgumentParser(prog="mink-rep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="causal type of a surface")
    p.add_argument("name")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("measure", parents=[common], help="area / Minkowski measure of a surface")
    p.add_argument("name")
    p.add_argument("--kind", choices=["area", "mink", "signed"], default="area")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("inner", parents=[common], help="inner products of two states")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("act", parents=[common], help="apply U(g) to a state and write it out")
    p.add_argument("transform")
    p.add_argument("state")
    p.add_argument("--out", default=None, help="output path ('-' for stdout)")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("verify", parents=[common], help="run seeded verification suites")
    p.add_argument("--suite", choices=list(suites.SUITES) + ["all"], default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (UsageError, SceneError) as err:
        print(f"mink-rep: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"mink-rep: I/O error: {err}", file=sys.stderr)
        return EXIT_IO
    # when the transformed state goes to stdout, keep the report off it
    stream = sys.stderr if report.info.get("out") == "-" else sys.stdout
    print(report.to_json() if args.json else report.to_text(), file=stream)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
