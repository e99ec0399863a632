"""Command-line front end: regularize, smooth, spectrum, classify.

Exit codes: 0 success/convergence, 2 iteration budget exhausted,
3 divergence, 64 usage error, 65 malformed input file, 66 missing file.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import elements, flow, mesh as mesh_mod, sampling, spectral
from .sphere import pi

EXIT_OK = 0
EXIT_MAX_ITERS = 2
EXIT_DIVERGENCE = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66

_FIELD_NAMES = {"gradient": elements.GRADIENT, "y-variant": elements.Y_VARIANT}


class _Parser(argparse.ArgumentParser):
    """argparse with BSD-style usage exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="polyflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    reg = sub.add_parser("regularize", help="flow a single element to a singular shape")
    reg.add_argument("--type", required=True, choices=elements.KINDS)
    reg.add_argument("--field", default="gradient", choices=sorted(_FIELD_NAMES))
    src = reg.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="configuration JSON file")
    src.add_argument("--random", type=int, metavar="SEED",
                     help="seeded random start (see README for the generator)")
    reg.add_argument("--step", type=float, default=0.05)
    reg.add_argument("--max-iters", type=int, default=10 ** 5)
    reg.add_argument("--tol", type=float, default=1e-10)
    reg.add_argument("--normalization", default="psi", choices=("psi", "none"))
    reg.add_argument("--trajectory", metavar="FILE.csv")
    reg.add_argument("--output", metavar="FILE")

    smo = sub.add_parser("smooth", help="smooth a mesh by field averaging")
    smo.add_argument("--input", required=True, metavar="mesh.json")
    smo.add_argument("--output", metavar="out.json")
    smo.add_argument("--step", type=float, default=0.05)
    smo.add_argument("--max-iters", type=int, default=10 ** 4)
    smo.add_argument("--quality-tol", type=float, default=1e-10)
    smo.add_argument("--report", metavar="report.csv")

    spe = sub.add_parser("spectrum", help="eigenvalues of the projected field Jacobian")
    spe.add_argument("--type", required=True, choices=elements.KINDS)
    spe.add_argument("--field", default="gradient", choices=sorted(_FIELD_NAMES))
    spe.add_argument("--at", required=True,
                     help="'optimal', 'collinear' (tetrahedron only), or a JSON file")

    cla = sub.add_parser("classify", help="singularity class of a configuration")
    cla.add_argument("--type", required=True, choices=elements.KINDS)
    cla.add_argument("--input", required=True, metavar="FILE")
    cla.add_argument("--field", default="gradient", choices=sorted(_FIELD_NAMES))
    cla.add_argument("--tol", type=float, default=1e-10)
    return parser


def _resolve_variant(parser, kind, field_name):
    variant = _FIELD_NAMES[field_name]
    if variant not in elements.VARIANTS_BY_KIND[kind]:
        parser.error(f"--field {field_name} is not defined for --type {kind}")
    return variant


def _load_configuration(path, kind) -> np.ndarray:
    """Read a configuration: bare {'vertices': ...} or a one-element mesh."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise mesh_mod.MeshFormatError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if isinstance(data, dict) and "elements" in data:
        m = mesh_mod.mesh_from_dict(data)
        if len(m.elements) != 1 or m.elements[0][0] != kind:
            raise mesh_mod.MeshFormatError(
                f"expected a single {kind} element in {path}")
        return m.vertices[list(m.elements[0][1])]
    if isinstance(data, dict) and "vertices" in data:
        p = np.asarray(data["vertices"], dtype=float)
    else:
        raise mesh_mod.MeshFormatError("configuration JSON needs a 'vertices' key")
    if p.shape != (elements.VERTEX_COUNT[kind], 3):
        raise mesh_mod.MeshFormatError(
            f"{kind} expects {elements.VERTEX_COUNT[kind]} vertices, got {p.shape}")
    return p


def _cmd_regularize(parser, args) -> int:
    variant = _resolve_variant(parser, args.type, args.field)
    if args.input is not None:
        p0 = _load_configuration(args.input, args.type)
    else:
        p0 = sampling.random_configuration(args.type, args.random, variant)
    settings = flow.FlowSettings(step=args.step, max_iters=args.max_iters,
                                 tol=args.tol, normalization=args.normalization)
    try:
        traj = flow.integrate(args.type, variant, p0, settings)
    except flow.FlowDivergenceError as exc:
        sys.stderr.write(f"divergence: {exc}\n")
        return EXIT_DIVERGENCE
    cls = flow.classify(args.type, variant, traj.p_final, tol=args.tol)
    result = {
        "type": args.type,
        "field": args.field,
        "vertices": [[float(x) for x in row] for row in traj.p_final],
        "classification": cls.tag,
        "lambda": cls.lam,
        "residual": traj.residual_final,
        "iterations": traj.iterations,
        "converged": traj.converged,
        "halvings": traj.halvings,
        "monotone_breaks": traj.monotone_breaks,
    }
    text = json.dumps(result, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.trajectory:
        flow.trajectory_to_csv(traj, args.trajectory)
    return EXIT_OK if traj.converged else EXIT_MAX_ITERS


def _cmd_smooth(args) -> int:
    m = mesh_mod.load_mesh(args.input)
    settings = flow.FlowSettings(step=args.step, max_iters=max(args.max_iters, 1))
    try:
        smoothed, reports = mesh_mod.smooth(m, settings, max_iters=args.max_iters,
                                            quality_tol=args.quality_tol)
    except flow.FlowDivergenceError as exc:
        sys.stderr.write(f"divergence: {exc}\n")
        return EXIT_DIVERGENCE
    if args.output:
        mesh_mod.save_mesh(smoothed, args.output)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iter", "mesh_mean_volume", "min_q", "mean_q",
                            "inverted_count"])
            for it, rep in enumerate(reports):
                writer.writerow([it,
                                 format(rep.mesh_mean_volume, ".17g"),
                                 format(rep.min_q, ".17g"),
                                 format(rep.mean_q, ".17g"),
                                 rep.inverted_count])
    final = reports[-1]
    print(json.dumps({
        "iterations": len(reports) - 1,
        "mesh_mean_volume": final.mesh_mean_volume,
        "min_q": final.min_q,
        "mean_q": final.mean_q,
        "max_q": final.max_q,
        "inverted_count": final.inverted_count,
    }, indent=2))
    return EXIT_OK


def _cmd_spectrum(parser, args) -> int:
    variant = _resolve_variant(parser, args.type, args.field)
    if args.at == "optimal":
        p = elements.reference_optimal(args.type)
    elif args.at == "collinear":
        if args.type != "tetrahedron":
            parser.error("--at collinear is defined for --type tetrahedron")
        p = elements.collinear_tetrahedron()
    else:
        p = _load_configuration(args.at, args.type)
    spec = spectral.hessian_spectrum(args.type, variant, p)
    print(spec.to_json())
    if args.at == "collinear":
        pos, neg = spectral.collinear_signature(p)
        print(json.dumps({"positive": pos, "negative": neg}))
    return EXIT_OK


def _cmd_classify(parser, args) -> int:
    variant = _resolve_variant(parser, args.type, args.field)
    p = _load_configuration(args.input, args.type)
    cls = flow.classify(args.type, variant, pi(p), tol=args.tol)
    print(json.dumps({
        "classification": cls.tag,
        "lambda": cls.lam,
        "residual": cls.residual,
    }, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "regularize":
            return _cmd_regularize(parser, args)
        if args.command == "smooth":
            return _cmd_smooth(args)
        if args.command == "spectrum":
            return _cmd_spectrum(parser, args)
        if args.command == "classify":
            return _cmd_classify(parser, args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"missing file: {exc.filename}\n")
        return EXIT_NOINPUT
    except mesh_mod.MeshFormatError as exc:
        sys.stderr.write(f"malformed input: {exc}\n")
        return EXIT_DATA
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
