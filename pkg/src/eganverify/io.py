"""JSON simplex files and CSV convergence tables.

Simplex schema, shared by both geometries::

    {"kind": "euclidean" | "spherical", "dim": n, "vertices": [[...], ...]}

Vertices are listed one per row.  A euclidean n-simplex has n + 1 rows of
length n; a spherical simplex on S^(n-1) has n unit rows of length n.
"""
import csv
import io
import json

import numpy as np

from .euclid import EuclideanSimplex
from .spherical import SphericalSimplex

CSV_COLUMNS = (
    "H",
    "beta_H",
    "Gamma_H",
    "alpha_H",
    "scaled_R",
    "scaled_r",
    "scaled_d",
    "spherical_slack",
    "euclid_slack",
)


class SchemaError(ValueError):
    pass


def simplex_from_dict(data):
    try:
        kind = data["kind"]
        dim = int(data["dim"])
        verts = np.asarray(data["vertices"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed simplex document: {exc}") from exc
    if verts.ndim != 2:
        raise SchemaError("vertices must be a list of coordinate lists")
    if kind == "euclidean":
        if verts.shape != (dim + 1, dim):
            raise SchemaError(f"euclidean dim {dim} needs {dim + 1} vertices of length {dim}, got {verts.shape}")
        return EuclideanSimplex(verts)
    if kind == "spherical":
        if verts.shape != (dim, dim):
            raise SchemaError(f"spherical dim {dim} needs {dim} vertices of length {dim}, got {verts.shape}")
        return SphericalSimplex(verts)
    raise SchemaError(f"unknown kind {kind!r}")


def simplex_to_dict(s):
    kind = "euclidean" if isinstance(s, EuclideanSimplex) else "spherical"
    dim = s.dim if kind == "euclidean" else s.m
    return {"kind": kind, "dim": dim, "vertices": s.vertices.tolist()}


def load_simplex(path):
    with open(path) as fh:
        return simplex_from_dict(json.load(fh))


def save_simplex(s, path):
    write_json(simplex_to_dict(s), path)


def dumps(obj):
    # repr-based float formatting round-trips doubles exactly
    return json.dumps(_plain(obj), indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_json(obj, path=None):
    text = dumps(obj)
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text)
    return text


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def table_to_csv(table):
    """CSV text for a ConvergenceTable, 17 significant digits per value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in table.rows:
        w.writerow([f"{getattr(row, c):.17g}" for c in CSV_COLUMNS])
    return buf.getvalue()


def read_csv_table(text):
    """Parse CSV text written by ``table_to_csv`` into a dict of float arrays."""
    rows = list(csv.DictReader(io.StringIO(text)))
    return {c: np.array([float(r[c]) for r in rows]) for c in CSV_COLUMNS}
