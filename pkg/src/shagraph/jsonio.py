"""JSON reading and writing for groups, graphs, models, cochains and modules."""

from __future__ import annotations

import json

import numpy as np

from .arith import GModule
from .errors import InputError, ParseError
from .graph import FieldLattice, ReductionGraph
from .groups import FiniteGroup, GroupHom, named_group, validate_group, validate_hom

SCHEMA = "shagraph.model/1"


def load_text(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         witness=(exc.lineno, exc.colno)) from None


def load_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", witness=str(path)) from None
    return load_text(text, str(path))


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_default)


def _default(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _get(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object", witness=where)
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}", witness=f"{where}.{key}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}", witness=f"{where}.{key}")
    return val


# --- groups ---------------------------------------------------------------------


def group_from_json(obj, where="group"):
    if isinstance(obj, str):
        return group_from_ref(obj)
    table = _get(obj, "table", where, list)
    order = obj.get("order", len(table))
    if order != len(table):
        raise ParseError(f"{where}: order {order} does not match a table with {len(table)} rows",
                         witness=f"{where}.order")
    try:
        grp = FiniteGroup(table, names=obj.get("names"), name=obj.get("name"))
    except (ValueError, TypeError):
        raise ParseError(f"{where}.table: not a square integer array", witness=f"{where}.table") from None
    validate_group(grp)
    return grp


def group_from_ref(ref):
    """``z2``, ``s3``, ... or ``file:path.json``."""
    if ref.startswith("file:"):
        return group_from_json(load_file(ref[5:]), where=ref)
    try:
        return named_group(ref)
    except KeyError:
        raise ParseError(f"unknown group {ref!r}", witness=ref) from None


def group_to_json(g: FiniteGroup):
    out = {"order": g.order, "table": g.table.tolist()}
    if g.names:
        out["names"] = list(g.names)
    if g.name:
        out["name"] = g.name
    return out


def hom_from_json(obj, groups=None, where="hom"):
    groups = groups or {}

    def resolve(ref, field):
        if isinstance(ref, str) and ref in groups:
            return groups[ref]
        return group_from_json(ref, where=f"{where}.{field}")

    src = resolve(_get(obj, "source", where), "source")
    tgt = resolve(_get(obj, "target", where), "target")
    h = GroupHom(src, tgt, _get(obj, "image", where, list))
    validate_hom(h)
    return h


def hom_to_json(h: GroupHom, source_ref=None, target_ref=None):
    return {"source": source_ref or group_to_json(h.source),
            "target": target_ref or group_to_json(h.target),
            "image": list(h.image)}


# --- graphs and models -------------------------------------------------------


def lattice_from_json(fields, where="fields"):
    if not isinstance(fields, list) or not fields:
        raise ParseError(f"{where}: expected a non-empty list", witness=where)
    labels, pairs, degree = [], [], {}
    for i, f in enumerate(fields):
        name = _get(f, "name", f"{where}[{i}]", str)
        labels.append(name)
        for small in f.get("contains", []):
            pairs.append((small, name))
        if "degree" in f:
            degree[name] = f["degree"]
    return FieldLattice(labels, pairs, degree)


def lattice_to_json(lat: FieldLattice):
    out = []
    for name in lat.labels:
        entry = {"name": name, "contains": [a for a in lat.labels if a != name and lat.le(a, name)]}
        if name in lat.degree:
            entry["degree"] = lat.degree[name]
        out.append(entry)
    return out


def graph_from_json(obj, where="graph"):
    lat = lattice_from_json(_get(obj, "fields", where), f"{where}.fields")
    vertices = []
    for i, v in enumerate(_get(obj, "vertices", where, list)):
        w = f"{where}.vertices[{i}]"
        vertices.append((_get(v, "id", w), _get(v, "kind", w, str), _get(v, "field", w, str)))
    edges = []
    for i, e in enumerate(_get(obj, "edges", where, list)):
        w = f"{where}.edges[{i}]"
        edges.append((_get(e, "id", w), _get(e, "p", w), _get(e, "u", w)))
    return ReductionGraph(vertices, edges, lat)


def graph_to_json(g: ReductionGraph):
    return {
        "fields": lattice_to_json(g.lattice),
        "vertices": [{"id": v.id, "kind": v.kind, "field": v.field} for v in g.vertices],
        "edges": [{"id": e.id, "p": e.p, "u": e.u} for e in g.edges],
    }


def model_from_json(obj, where="model"):
    from .sha import ShaModel

    schema = obj.get("schema", SCHEMA) if isinstance(obj, dict) else None
    if schema != SCHEMA:
        raise ParseError(f"{where}: unsupported schema {schema!r} (expected {SCHEMA!r})", witness="schema")
    g = graph_from_json(obj, where)
    groups = {}
    for label, ref in _get(obj, "groups", where, dict).items():
        groups[label] = group_from_json(ref, where=f"{where}.groups.{label}")
    maps = {}
    for i, m in enumerate(obj.get("maps", [])):
        w = f"{where}.maps[{i}]"
        a, b = _get(m, "from", w, str), _get(m, "to", w, str)
        if a not in groups or b not in groups:
            raise ParseError(f"{w}: no group for field {a if a not in groups else b!r}", witness=w)
        h = GroupHom(groups[a], groups[b], _get(m, "image", w, list))
        validate_hom(h)
        maps[(a, b)] = h
    return ShaModel(g, groups, maps)


def model_to_json(m):
    out = {"schema": SCHEMA}
    out.update(graph_to_json(m.graph))
    out["groups"] = {label: group_to_json(m.group_of[label]) for label in m.lattice.labels}
    out["maps"] = [{"from": a, "to": b, "image": list(h.image)}
                   for (a, b), h in sorted(m.map_of.items()) if a != b]
    return out


def cochain_from_json(obj, g, radices=None):
    from .cohomology import cochain_from_entries

    return cochain_from_entries(g, _get(obj, "entries", "cochain", dict), radices)


def cochain_to_json(c, g):
    return {"entries": {str(e.id): int(x) for e, x in zip(g.edges, c)}}


# --- modules ------------------------------------------------------------------


def module_from_json(obj, where="module"):
    body = _get(obj, "module", where, dict) if "module" in obj else obj
    orders = _get(body, "orders", where, list)
    try:
        if "action" in body:
            grp = group_from_json(_get(body, "group", where), where=f"{where}.group")
            mod = GModule(orders, grp, body["action"])
        else:
            sigma = _get(body, "sigma", where, list)
            mod = GModule.cyclic(orders, sigma, body.get("sigmaOrder"))
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}", witness=where) from None
    mod.validate()
    return mod


def module_to_json(mod: GModule):
    return {"module": {"orders": mod.orders, "group": group_to_json(mod.group),
                       "action": [a.tolist() for a in mod.action]}}


def error_json(exc: InputError):
    return {"error": type(exc).__name__, "message": str(exc), "witness": exc.witness}
