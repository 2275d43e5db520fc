"""JSON and inline descriptors for matroids and gain graphs.

Matroid descriptors::

    {"type": "bases", "n": 3, "bases": [[0, 1], [0, 2]]}
    {"type": "uniform", "n": 5, "r": 3}
    {"type": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2]]}
    {"type": "matrix", "field": "Q" | "F2" | "Fp", "p": 5,
     "orientation": "rows" | "columns", "entries": [[1, "1/2"], [0, 1]]}
    {"type": "dual", "of": {...}}
    {"type": "delete" | "contract", "of": {...}, "subset": [0, 2]}
    {"type": "truncate", "of": {...}, "k": 2}
    {"type": "relax", "of": {...}, "subset": [1, 2]}
    {"type": "direct_sum", "parts": [{...}, {...}]}

Inline forms: ``uniform:5:3`` and ``graphic:0-1,0-2,1-2``.
"""
import json
import os
from fractions import Fraction

from .errors import InputError
from .gain import GainGraph, gain_graph_from_json
from .matroid import (Matroid, circuit_hyperplane_relax, contract, delete,
                      direct_sum, dual, from_bases, from_matrix, graphic,
                      truncation, uniform)


def _field(obj, key):
    try:
        return obj[key]
    except KeyError:
        raise InputError(f"descriptor of type {obj.get('type')!r} is missing {key!r}") from None


def _entry(x):
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise InputError(f"bad matrix entry {x!r}") from None
    if isinstance(x, float):
        raise InputError("matrix entries must be integers or exact fractions given as strings")
    return x


def matroid_from_json(obj) -> Matroid:
    if not isinstance(obj, dict):
        raise InputError("matroid descriptor must be a JSON object")
    kind = obj.get("type")
    if kind == "bases":
        return from_bases(int(_field(obj, "n")), _field(obj, "bases"))
    if kind == "uniform":
        return uniform(int(_field(obj, "n")), int(_field(obj, "r")))
    if kind == "graphic":
        return graphic(int(_field(obj, "vertices")), _field(obj, "edges"))
    if kind == "matrix":
        entries = [[_entry(x) for x in row] for row in _field(obj, "entries")]
        field = str(obj.get("field", "Q"))
        return from_matrix(entries, field=field, orientation=obj.get("orientation", "columns"),
                           p=int(obj.get("p", 2)))
    if kind == "dual":
        return dual(matroid_from_json(_field(obj, "of")))
    if kind in ("delete", "contract"):
        inner = matroid_from_json(_field(obj, "of"))
        op = delete if kind == "delete" else contract
        return op(inner, _field(obj, "subset"))
    if kind == "truncate":
        return truncation(matroid_from_json(_field(obj, "of")), int(_field(obj, "k")))
    if kind == "relax":
        return circuit_hyperplane_relax(matroid_from_json(_field(obj, "of")), _field(obj, "subset"))
    if kind == "direct_sum":
        parts = [matroid_from_json(p) for p in _field(obj, "parts")]
        if not parts:
            raise InputError("direct_sum needs at least one part")
        out = parts[0]
        for p in parts[1:]:
            out = direct_sum(out, p)
        return out
    raise InputError(f"unknown matroid descriptor type {kind!r}")


def matroid_to_json(M: Matroid) -> dict:
    return {"type": "bases", "n": M.n,
            "bases": [[e for e in range(M.n) if (b >> e) & 1] for b in M.bases]}


def _parse_edges(text: str):
    edges = []
    for tok in filter(None, text.split(",")):
        try:
            u, v = tok.split("-")
            edges.append((int(u), int(v)))
        except ValueError:
            raise InputError(f"bad edge {tok!r}; expected u-v") from None
    return edges


def parse_graph(arg: str):
    """A plane multigraph as (vertices, edges) from inline or JSON graphic form."""
    if arg.startswith("graphic:"):
        edges = _parse_edges(arg[len("graphic:"):])
        vertices = max((max(e) for e in edges), default=-1) + 1
        return vertices, edges
    obj = load_json(arg)
    if obj.get("type") != "graphic":
        raise InputError("expected a graphic descriptor")
    return int(_field(obj, "vertices")), [tuple(e) for e in _field(obj, "edges")]


def load_json(arg: str):
    """Parse ``arg`` as inline JSON, or read it as a JSON file path."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        if not os.path.exists(arg):
            raise InputError(f"no such file or descriptor: {arg!r}")
        with open(arg) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {arg!r}: {exc}") from None


def parse_matroid(arg: str) -> Matroid:
    if arg.startswith("uniform:"):
        parts = arg.split(":")
        if len(parts) != 3:
            raise InputError("expected uniform:n:r")
        try:
            return uniform(int(parts[1]), int(parts[2]))
        except ValueError:
            raise InputError(f"bad uniform descriptor {arg!r}") from None
    if arg.startswith("graphic:"):
        vertices, edges = parse_graph(arg)
        return graphic(vertices, edges)
    return matroid_from_json(load_json(arg))


def parse_gain_graph(arg: str) -> GainGraph:
    return gain_graph_from_json(load_json(arg))
