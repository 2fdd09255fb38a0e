"""Command-line surface: nodes, coeffs, grid, basis, verify, interp.

Exit codes: 0 success, 1 validation failure, 2 numerical failure,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import fileio
from .checkerboard import build_checkerboard, grid_from_coeffs
from .errors import NumericalError, ValidationError
from .interp import eval_interpolant_many, interpolate
from .lagrange import basis_values_on_set
from .nodemap import coeffs_from_nodes, nodes_from_coeffs
from .presets import chebyshev_grid, padua_grid
from .verify import verify_grid

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="checkerlag",
                     description="Bivariate Lagrange bases on checkerboard node sets")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("nodes", help="coefficients -> node sequence")
    p.add_argument("--coeffs", required=True, metavar="FILE")
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("coeffs", help="nodes -> coefficients (inverse map)")
    p.add_argument("--nodes", required=True, metavar="FILE")
    p.add_argument("--normalize-a0", action="store_true",
                   help="assert the even-n normalization a_0 = 1 on the output")
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("grid", help="build a grid and its checkerboard set")
    p.add_argument("--preset", choices=["padua", "chebyshev"])
    p.add_argument("--n", type=int)
    p.add_argument("--xcoeffs", metavar="FILE")
    p.add_argument("--ycoeffs", metavar="FILE")
    p.add_argument("--sigma", type=int)
    p.add_argument("--tau", type=int, choices=[0, 1])
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("basis", help="dump basis values on a lattice (CSV)")
    p.add_argument("--grid", required=True, metavar="FILE")
    p.add_argument("--tau", type=int, choices=[0, 1], required=True)
    p.add_argument("--eval-lattice", type=int, required=True, metavar="M",
                   help="M x M lattice over the node bounding box")
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("verify", help="rank / null-space / delta report (JSON)")
    p.add_argument("--grid", required=True, metavar="FILE")
    p.add_argument("--tau", type=int, choices=[0, 1], required=True)
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("interp", help="evaluate an interpolant (CSV)")
    p.add_argument("--grid", required=True, metavar="FILE")
    p.add_argument("--tau", type=int, choices=[0, 1], required=True)
    p.add_argument("--samples", required=True, metavar="FILE")
    p.add_argument("--points", required=True, metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_nodes(args) -> int:
    coeffs = fileio.load_coeffs(args.coeffs)
    nodes = nodes_from_coeffs(coeffs)
    _emit(fileio.nodes_to_json(nodes), args.out)
    return 0


def _cmd_coeffs(args) -> int:
    nodes = fileio.load_nodes(args.nodes)
    coeffs = coeffs_from_nodes(nodes)
    if args.normalize_a0 and coeffs.n % 2 == 0 and abs(coeffs.a[0] - 1.0) > 1e-12:
        raise NumericalError("even-n solution did not carry a_0 = 1")
    _emit(fileio.coeffs_to_json(coeffs), args.out)
    return 0


def _cmd_grid(args, parser: _Parser) -> int:
    if args.preset:
        if args.n is None:
            parser.error("--preset requires --n")
        if args.xcoeffs or args.ycoeffs:
            parser.error("--preset and --xcoeffs/--ycoeffs are exclusive")
        grid = padua_grid(args.n) if args.preset == "padua" else chebyshev_grid(args.n)
    else:
        if not (args.xcoeffs and args.ycoeffs):
            parser.error("need --preset or both --xcoeffs and --ycoeffs")
        xc = fileio.load_coeffs(args.xcoeffs)
        yc = fileio.load_coeffs(args.ycoeffs)
        if args.sigma is not None and yc.n - xc.n != args.sigma:
            raise ValidationError(
                f"--sigma {args.sigma} disagrees with coefficient lengths "
                f"({yc.n} - {xc.n})"
            )
        grid = grid_from_coeffs(xc, yc)
    _emit(fileio.grid_to_json(grid, args.tau), args.out)
    return 0


def _cmd_basis(args) -> int:
    grid = fileio.load_grid(args.grid)
    cset = build_checkerboard(grid, args.tau)
    m = args.eval_lattice
    if m < 2:
        raise ValidationError("--eval-lattice must be at least 2")
    gx = np.linspace(grid.xnodes.nodes[-1], grid.xnodes.nodes[0], m)
    gy = np.linspace(grid.ynodes.nodes[-1], grid.ynodes.nodes[0], m)
    X, Y = [arr.ravel() for arr in np.meshgrid(gx, gy, indexing="ij")]
    L = basis_values_on_set(grid, cset, X, Y)
    rows = []
    for j, (s, v) in enumerate(zip(cset.rs, cset.us)):
        for i in range(len(X)):
            rows.append((int(s), int(v), X[i], Y[i], L[i, j]))
    _emit(fileio.format_basis_csv(rows), args.out)
    return 0


def _cmd_verify(args) -> int:
    grid = fileio.load_grid(args.grid)
    report = verify_grid(grid, args.tau)
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    return 0 if report.ok else 1


def _cmd_interp(args) -> int:
    grid = fileio.load_grid(args.grid)
    samples = fileio.load_samples(args.samples)
    points = fileio.load_points(args.points)
    p = interpolate(grid, args.tau, samples)
    values = eval_interpolant_many(p, points)
    _emit(fileio.format_eval_csv(points, values), args.out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "nodes":
            return _cmd_nodes(args)
        if args.command == "coeffs":
            return _cmd_coeffs(args)
        if args.command == "grid":
            return _cmd_grid(args, parser)
        if args.command == "basis":
            return _cmd_basis(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "interp":
            return _cmd_interp(args)
        parser.error(f"unknown command {args.command}")
    except ValidationError as exc:
        print(f"checkerlag: validation error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"checkerlag: numerical error: {exc}", file=sys.stderr)
        return 2
    return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
