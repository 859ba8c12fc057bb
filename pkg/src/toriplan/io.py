"""JSON file formats for complexes, graphs and planning queries.

Complex: ``{"n": 3, "facets": [[1, 2], [2, 3]]}``
Graph:   ``{"n": 3, "edges": [[1, 2], [2, 3]]}``
Plan query: a complex plus two product points, ``{"complex": {...}, "x": ..., "y": ...}``,
where a point is a list of angles (circles only) or a list of unit vectors.
Indices are 1-based.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import sphere as sph
from .complex import ComplexError, Graph, SimplicialComplex, from_facets


class InputError(ValueError):
    """Malformed input file; the message names the file and the field."""


def read_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list, got {value!r}")
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


def complex_from_dict(data: dict, where: str = "complex") -> SimplicialComplex:
    if "n" not in data:
        raise InputError(f"{where}: missing field 'n'")
    if "facets" not in data:
        raise InputError(f"{where}: missing field 'facets'")
    n = _int(data["n"], f"{where}.n")
    if not isinstance(data["facets"], list):
        raise InputError(f"{where}.facets: expected a list")
    facets = [_int_list(f, f"{where}.facets[{i}]") for i, f in enumerate(data["facets"])]
    for i, f in enumerate(facets):
        for j, v in enumerate(f):
            if not 1 <= v <= n:
                raise InputError(f"{where}.facets[{i}][{j}]: index {v} outside [1, {n}]")
    try:
        return from_facets(n, facets)
    except ComplexError as exc:
        raise InputError(f"{where}: {exc}") from exc


def graph_from_dict(data: dict, where: str = "graph") -> Graph:
    if "n" not in data or "edges" not in data:
        raise InputError(f"{where}: needs fields 'n' and 'edges'")
    n = _int(data["n"], f"{where}.n")
    if not isinstance(data["edges"], list):
        raise InputError(f"{where}.edges: expected a list")
    edges = []
    for i, e in enumerate(data["edges"]):
        pair = _int_list(e, f"{where}.edges[{i}]")
        if len(pair) != 2:
            raise InputError(f"{where}.edges[{i}]: an edge has two endpoints")
        for v in pair:
            if not 1 <= v <= n:
                raise InputError(f"{where}.edges[{i}]: vertex {v} outside [1, {n}]")
        if pair[0] == pair[1]:
            raise InputError(f"{where}.edges[{i}]: loop at vertex {pair[0]}")
        edges.append(pair)
    return Graph.from_edges(n, edges)


def load_complex(path) -> SimplicialComplex:
    return complex_from_dict(read_json(path), str(path))


def load_graph(path) -> Graph:
    return graph_from_dict(read_json(path), str(path))


def point_from_json(value, n: int, m: int, where: str) -> np.ndarray:
    """Product point from angles (m == 2) or explicit unit vectors."""
    if not isinstance(value, list) or len(value) != n:
        raise InputError(f"{where}: expected a list of {n} coordinates")
    rows = []
    for i, v in enumerate(value):
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            if m != 2:
                raise InputError(f"{where}[{i}]: angles only describe circles; give a vector of length {m}")
            rows.append(sph.angle_point(float(v)))
        elif isinstance(v, list) and len(v) == m and all(isinstance(c, (int, float)) for c in v):
            vec = np.array(v, dtype=float)
            if abs(np.linalg.norm(vec) - 1.0) > 1e-9:
                raise InputError(f"{where}[{i}]: vector has norm {np.linalg.norm(vec):.6g}, expected 1")
            rows.append(vec / np.linalg.norm(vec))
        else:
            raise InputError(f"{where}[{i}]: expected an angle or a vector of length {m}")
    return np.array(rows)


def load_plan_query(path, m: int) -> tuple[SimplicialComplex, np.ndarray, np.ndarray]:
    data = read_json(path)
    where = str(path)
    if "complex" not in data:
        raise InputError(f"{where}: missing field 'complex'")
    if not isinstance(data["complex"], dict):
        raise InputError(f"{where}.complex: expected an object")
    X = complex_from_dict(data["complex"], f"{where}.complex")
    for key in ("x", "y"):
        if key not in data:
            raise InputError(f"{where}: missing field '{key}'")
    x = point_from_json(data["x"], X.n, m, f"{where}.x")
    y = point_from_json(data["y"], X.n, m, f"{where}.y")
    return X, x, y


def path_records(ts: np.ndarray, pts: np.ndarray) -> list[dict]:
    return [{"t": float(t), "point": p.tolist()} for t, p in zip(ts, pts)]


def path_csv(ts: np.ndarray, pts: np.ndarray) -> str:
    n, m = pts.shape[1], pts.shape[2]
    head = ["t"] + [f"x{i + 1}_{c}" for i in range(n) for c in range(m)]
    lines = [",".join(head)]
    for t, p in zip(ts, pts):
        lines.append(",".join([repr(float(t))] + [repr(float(v)) for v in p.reshape(-1)]))
    return "\n".join(lines) + "\n"
