"""JSON model files.

Schema (format_version 1)::

    {"format_version": 1, "name": str,
     "nodes": [{"id": str, "color": "black" | "white"}, ...],
     "edges": [{"id": str, "black": str, "white": str, "winding": [int, int]}, ...],
     "rotation": {node_id: [edge_id, ...]},
     "v0": int}                                  # optional

Edge order in the file is the arrow order of the quiver.
"""

import json

from .catalog import catalog
from .dimer import DimerModel, Edge
from .errors import MalformedModel

FORMAT_VERSION = 1
_TOP = {"format_version", "name", "nodes", "edges", "rotation", "v0"}
_REQUIRED = _TOP - {"v0"}


def _check_keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise MalformedModel(f"{where} must be an object")
    unknown = set(obj) - allowed
    if unknown:
        raise MalformedModel(f"unknown field(s) in {where}: {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise MalformedModel(f"missing field(s) in {where}: {sorted(missing)}")


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedModel(f"{where} must be an integer")
    return x


def model_from_dict(d):
    _check_keys(d, _TOP, _REQUIRED, "model")
    if d["format_version"] != FORMAT_VERSION:
        raise MalformedModel(f"unsupported format_version {d['format_version']!r}")
    black, white = [], []
    for i, node in enumerate(d["nodes"]):
        _check_keys(node, {"id", "color"}, {"id", "color"}, f"nodes[{i}]")
        if node["color"] == "black":
            black.append(str(node["id"]))
        elif node["color"] == "white":
            white.append(str(node["id"]))
        else:
            raise MalformedModel(f"node {node['id']!r} has color {node['color']!r}")
    edges = []
    for i, e in enumerate(d["edges"]):
        keys = {"id", "black", "white", "winding"}
        _check_keys(e, keys, keys, f"edges[{i}]")
        w = e["winding"]
        if not isinstance(w, list) or len(w) != 2:
            raise MalformedModel(f"edge {e['id']!r}: winding must be a pair")
        edges.append(Edge(str(e["id"]), str(e["black"]), str(e["white"]),
                          tuple(_int(x, f"edge {e['id']!r} winding") for x in w)))
    rot = d["rotation"]
    if not isinstance(rot, dict):
        raise MalformedModel("rotation must be an object")
    rotation = {str(k): tuple(str(x) for x in v) for k, v in rot.items()}
    v0 = d.get("v0")
    if v0 is not None:
        v0 = _int(v0, "v0")
    return DimerModel(str(d["name"]), tuple(black), tuple(white), tuple(edges), rotation, v0)


def model_to_dict(model):
    out = {
        "format_version": FORMAT_VERSION,
        "name": model.name,
        "nodes": [{"id": n, "color": "black"} for n in model.black]
                 + [{"id": n, "color": "white"} for n in model.white],
        "edges": [{"id": e.id, "black": e.black, "white": e.white, "winding": list(e.winding)}
                  for e in model.edges],
        "rotation": {n: list(model.rotation[n]) for n in model.nodes},
    }
    if model.v0 is not None:
        out["v0"] = model.v0
    return out


def load_model(source):
    """A model from ``catalog:NAME`` or a path to a JSON model file."""
    if source.startswith("catalog:"):
        return catalog(source.split(":", 1)[1])
    try:
        with open(source) as f:
            data = json.load(f)
    except OSError as exc:
        raise MalformedModel(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedModel(f"{source} is not valid JSON: {exc}") from None
    return model_from_dict(data)
