"""JSON and CSV schemas for coefficients, nodes, grids, sets and samples.

Floats are serialized with Python's shortest round-trip representation,
so identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .checkerboard import CheckerboardSet, GridInstance, build_checkerboard, make_grid
from .errors import ValidationError
from .nodemap import NodeSequence
from .orthopoly import RecurrenceCoeffs
from .vanishing import QuotientBasis


def _read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def _write_text(path, text: str) -> None:
    Path(path).write_text(text)


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


# -- coefficients ------------------------------------------------------------

def coeffs_to_json(coeffs: RecurrenceCoeffs) -> str:
    return _dump_json({"n": coeffs.n, "a": list(coeffs.a), "b": list(coeffs.b)})


def load_coeffs(path) -> RecurrenceCoeffs:
    data = _read_json(path)
    try:
        n, a, b = int(data["n"]), data["a"], data["b"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: expected keys n, a, b") from exc
    if len(a) != n or len(b) != n:
        raise ValidationError(f"{path}: a and b must have length n = {n}")
    return RecurrenceCoeffs(np.array(a, dtype=float), np.array(b, dtype=float))


def save_coeffs(path, coeffs: RecurrenceCoeffs) -> None:
    _write_text(path, coeffs_to_json(coeffs))


# -- nodes -------------------------------------------------------------------

def nodes_to_json(nodes: NodeSequence) -> str:
    return _dump_json({"nodes": list(nodes.nodes)})


def load_nodes(path) -> NodeSequence:
    data = _read_json(path)
    if "nodes" not in data:
        raise ValidationError(f"{path}: expected key 'nodes'")
    return NodeSequence(np.array(data["nodes"], dtype=float))


def save_nodes(path, nodes: NodeSequence) -> None:
    _write_text(path, nodes_to_json(nodes))


# -- grids -------------------------------------------------------------------

def grid_to_json(grid: GridInstance, tau: int | None = None) -> str:
    payload = {
        "n": grid.n,
        "sigma": grid.sigma,
        "xnodes": list(grid.xnodes.nodes),
        "ynodes": list(grid.ynodes.nodes),
        "xa": list(grid.xcoeffs.a),
        "xb": list(grid.xcoeffs.b),
        "ya": list(grid.ycoeffs.a),
        "yb": list(grid.ycoeffs.b),
    }
    if tau is not None:
        cset = build_checkerboard(grid, tau)
        payload["checkerboard"] = checkerboard_payload(cset)
    return _dump_json(payload)


def save_grid(path, grid: GridInstance, tau: int | None = None) -> None:
    _write_text(path, grid_to_json(grid, tau))


def load_grid(path) -> GridInstance:
    data = _read_json(path)
    try:
        xnodes = NodeSequence(np.array(data["xnodes"], dtype=float))
        ynodes = NodeSequence(np.array(data["ynodes"], dtype=float))
        xc = RecurrenceCoeffs(np.array(data["xa"], dtype=float),
                              np.array(data["xb"], dtype=float))
        yc = RecurrenceCoeffs(np.array(data["ya"], dtype=float),
                              np.array(data["yb"], dtype=float))
    except KeyError as exc:
        raise ValidationError(f"{path}: missing grid key {exc}") from exc
    grid = make_grid(xc, yc, xnodes, ynodes)
    if "n" in data and int(data["n"]) != grid.n:
        raise ValidationError(f"{path}: stated n does not match the node count")
    if "sigma" in data and int(data["sigma"]) != grid.sigma:
        raise ValidationError(f"{path}: stated sigma does not match the node counts")
    return grid


# -- checkerboard sets -------------------------------------------------------

def checkerboard_payload(cset: CheckerboardSet) -> dict:
    return {
        "tau": cset.tau,
        "points": [{"r": r, "u": u, "x": x, "y": y} for r, u, x, y in cset.points],
    }


def checkerboard_to_json(cset: CheckerboardSet) -> str:
    return _dump_json(checkerboard_payload(cset))


def load_checkerboard(path) -> CheckerboardSet:
    data = _read_json(path)
    try:
        tau = int(data["tau"])
        pts = data["points"]
        rs = np.array([p["r"] for p in pts], dtype=int)
        us = np.array([p["u"] for p in pts], dtype=int)
        xs = np.array([p["x"] for p in pts], dtype=float)
        ys = np.array([p["y"] for p in pts], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"{path}: malformed checkerboard file") from exc
    if np.any((rs + us) % 2 != tau):
        raise ValidationError(f"{path}: point parity disagrees with tau")
    return CheckerboardSet(tau, rs, us, xs, ys)


# -- quotient basis dump -----------------------------------------------------

def quotient_to_json(qbasis: QuotientBasis) -> str:
    elems = []
    for el in qbasis.elements:
        entry = {}
        for (j, k) in zip(*np.nonzero(el.coeffs)):
            entry[f"{j},{k}"] = float(el.coeffs[j, k])
        elems.append(entry)
    return _dump_json({"case": qbasis.case, "M": qbasis.M, "elements": elems})


# -- CSV samples and points --------------------------------------------------

def load_samples(path) -> dict:
    """Sample rows r,u,value keyed by the node index pair."""
    out = {}
    try:
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith(("r", "#")):
                    continue
                r, u, val = row[:3]
                out[(int(r), int(u))] = float(val)
    except (OSError, ValueError) as exc:
        raise ValidationError(f"cannot read samples {path}: {exc}") from exc
    return out


def save_samples(path, samples: dict) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "u", "value"])
    for (r, u) in sorted(samples):
        writer.writerow([r, u, repr(float(samples[(r, u)]))])
    _write_text(path, buf.getvalue())


def load_points(path) -> np.ndarray:
    """Evaluation points, one x,y row each."""
    rows = []
    try:
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith(("x", "#")):
                    continue
                rows.append((float(row[0]), float(row[1])))
    except (OSError, ValueError, IndexError) as exc:
        raise ValidationError(f"cannot read points {path}: {exc}") from exc
    if not rows:
        raise ValidationError(f"{path}: no points found")
    return np.array(rows, dtype=float)


def format_eval_csv(points: np.ndarray, values: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "p"])
    for (x, y), v in zip(points, values):
        writer.writerow([repr(float(x)), repr(float(y)), repr(float(v))])
    return buf.getvalue()


def format_basis_csv(rows) -> str:
    """Rows (s, v, x, y, L) from a basis lattice dump."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["s", "v", "point_x", "point_y", "L_value"])
    for s, v, x, y, val in rows:
        writer.writerow([s, v, repr(float(x)), repr(float(y)), repr(float(val))])
    return buf.getvalue()
