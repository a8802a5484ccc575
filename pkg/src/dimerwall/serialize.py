"""Deterministic JSON-ready views of the computed objects."""

import hashlib
import json
from fractions import Fraction

SCHEMA_VERSION = 1


def num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def vec(v):
    return [num(x) for x in v]


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def quiver_json(q):
    ids = [e.id for e in q.model.edges]
    return {
        "vertices": q.n_vertices,
        "v0": q.v0,
        "arrows": [{"id": ids[a], "source": q.source[a], "target": q.target[a],
                    "p_plus": [ids[b] for b in q.p_plus[a]],
                    "p_minus": [ids[b] for b in q.p_minus[a]]}
                   for a in range(q.n_arrows)],
        "small_cycles": {str(v): [ids[a] for a in c] for v, c in sorted(q.small_cycles.items())},
    }


def matching_ids(model, D):
    return [model.edges[i].id for i in sorted(D)]


def polygon_json(P):
    return {
        "hull": [list(p) for p in P.hull],
        "multiplicity": [[list(p), m] for p, m in sorted(P.multiplicity.items())],
        "normalized_area": P.normalized_area,
        "interior_points": [list(p) for p in P.interior_points()],
    }


def fan_json(model, fan):
    return {
        "rays": [{"point": list(p), "vector": list(p) + [1], "matching": matching_ids(model, D)}
                 for p, D in zip(fan.points, fan.matchings)],
        "cones": [list(c) for c in fan.cones],
        "triangles": sorted([list(map(list, t)) for t in fan.triangulation.triangles]),
        "curves": [{"rays": list(c.edge), "opposite": list(c.opposite), "a": c.a, "b": c.b}
                   for c in fan.curves],
    }


def classes_json(classes):
    return [vec(c) for c in classes]


def chamber_json(c):
    model = c.quiver.model
    return {
        "theta": vec(c.theta),
        "census": sorted(list(x) for x in c.census),
        "halfspaces": [vec(h) for h in c.key],
        "generators": sorted(vec(g) for g in c.cone.generators),
        "fan": fan_json(model, c.fan),
        "classes": classes_json(c.classes),
    }


def wall_json(w):
    return {
        "normal": vec(w.normal),
        "R1": sorted(w.R1),
        "R2": sorted(w.R2),
        "theta0": vec(w.theta0),
        "theta_prime": vec(w.theta_prime),
        "type": w.type,
        "contracted_curves": [list(e) for e in w.contracted],
        "divisor": w.divisor,
        "unstable_divisors": list(w.unstable_divisors),
        "unstable_dim": w.unstable_dim,
        "unstable_patterns": [list(z) for z in w.unstable_patterns],
        "topology": {"R1_connected": w.r1_connected, "R2_connected": w.r2_connected,
                     "boundary_components": w.boundary_components,
                     "R1_simply_connected": w.r1_simply_connected,
                     "R2_simply_connected": w.r2_simply_connected},
    }


def crossing_json(r):
    return {
        "source": [vec(h) for h in r.source],
        "target": [vec(h) for h in r.target.key] if r.target is not None else None,
        "wall": wall_json(r.wall),
        "theta_prime": vec(r.theta_prime),
        "predicted_triangles": sorted([list(map(list, t)) for t in r.predicted_triangles]),
        "predicted_classes": classes_json(r.predicted_classes),
        "degrees": {str(v): num(d) for v, d in sorted(r.degrees.items())},
        "agreement": r.agreement,
        "mismatch": list(r.mismatch),
    }


def chamber_id(key):
    return hashlib.sha1(json.dumps([vec(h) for h in key]).encode()).hexdigest()[:10]


def triangulation_id(tris):
    return hashlib.sha1(json.dumps(sorted([list(map(list, t)) for t in tris])).encode()).hexdigest()[:8]


def graph_json(g):
    index = {k: i for i, k in enumerate(g.order)}
    nodes = []
    for k in g.order:
        c = g.nodes[k]
        nodes.append({"index": index[k], "id": chamber_id(k), "theta": vec(c.theta),
                      "halfspaces": [vec(h) for h in k],
                      "triangles": sorted([list(map(list, t)) for t in c.fan.triangulation.triangles]),
                      "classes": classes_json(c.classes)})
    crossings = [{"source": index[r.source], "target": index[r.target.key],
                  "type": r.wall.type, "normal": vec(r.wall.normal), "agreement": r.agreement}
                 for r in g.edges]
    edges, seen = [], set()
    for r in g.edges:
        a, b = index[r.source], index[r.target.key]
        key = (min(a, b), max(a, b), _unsigned(r.wall.normal))
        if key not in seen:
            seen.add(key)
            edges.append({"nodes": [key[0], key[1]], "normal": vec(key[2]),
                          "kind": r.wall.kind})
    return {"nodes": nodes, "edges": edges, "crossings": crossings, "complete": g.complete}


def _unsigned(n):
    first = next((x for x in n if x), 0)
    return tuple(n) if first > 0 else tuple(-x for x in n)


def graph_dot(g):
    index = {k: i for i, k in enumerate(g.order)}
    lines = ["graph chambers {"]
    for k in g.order:
        tri = triangulation_id(g.nodes[k].fan.triangulation.triangles)
        lines.append(f'  c{index[k]} [label="c{index[k]}\\n{tri}"];')
    seen = set()
    for r in g.edges:
        a, b = index[r.source], index[r.target.key]
        key = (min(a, b), max(a, b), _unsigned(r.wall.normal))
        if key in seen:
            continue
        seen.add(key)
        lines.append(f'  c{min(a, b)} -- c{max(a, b)} [label="{r.wall.type}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
