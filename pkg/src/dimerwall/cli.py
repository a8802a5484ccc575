"""Command-line front end.

Every subcommand prints deterministic JSON.  Exit status is 0 on success,
1 on domain errors and 2 on invariant violations; errors are reported as a
JSON object ``{"error": CODE, "module": ..., "message": ...}`` on stdout.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import chambers as ch
from . import serialize as ser
from . import wallcross as wc
from .dimer import characteristic_polygon, matching_class, perfect_matchings, validate_and_build
from .errors import DimerWallError, MalformedModel
from .modelfile import load_model
from .moduli import fan as build_fan


def parse_theta(text):
    try:
        theta = tuple(Fraction(x) for x in text.split(","))
    except ValueError:
        raise MalformedModel(f"cannot parse theta {text!r}") from None
    if sum(theta) != 0:
        raise MalformedModel("theta entries must sum to zero")
    return theta


def _budget(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("budget must be at least 1")
    return n


def _load(args):
    model = load_model(args.model)
    return model, validate_and_build(model)


def _theta(args, q):
    if args.theta is None:
        if q.n_vertices == 1:
            return (0,)
        raise MalformedModel("--theta is required for this model")
    return parse_theta(args.theta)


def cmd_validate(args):
    model, q = _load(args)
    Ds, ok = perfect_matchings(model)
    characteristic_polygon(model)
    return {"model": model.name, "valid": True, "faces": q.n_vertices,
            "edges": len(model.edges), "nodes": len(model.nodes),
            "matchings": len(Ds), "non_degenerate": ok}


def cmd_quiver(args):
    model, q = _load(args)
    return {"model": model.name, "quiver": ser.quiver_json(q)}


def cmd_matchings(args):
    model, q = _load(args)
    Ds, ok = perfect_matchings(model)
    return {"model": model.name, "non_degenerate": ok,
            "reference": ser.matching_ids(model, Ds[0]),
            "matchings": [{"edges": ser.matching_ids(model, D),
                           "class": list(matching_class(model, D, Ds[0]))} for D in Ds]}


def cmd_polygon(args):
    model, q = _load(args)
    return {"model": model.name, "polygon": ser.polygon_json(characteristic_polygon(model))}


def cmd_fan(args):
    model, q = _load(args)
    return {"model": model.name, "fan": ser.fan_json(model, build_fan(q, _theta(args, q)))}


def cmd_chamber(args):
    model, q = _load(args)
    return {"model": model.name, "chamber": ser.chamber_json(ch.chamber_of(q, _theta(args, q)))}


def cmd_walls(args):
    model, q = _load(args)
    c = ch.chamber_of(q, _theta(args, q))
    return {"model": model.name, "walls": [ser.wall_json(w) for w in ch.walls(c)]}


def cmd_cross(args):
    model, q = _load(args)
    c = ch.chamber_of(q, _theta(args, q))
    ws = ch.walls(c)
    if not 0 <= args.facet < len(ws):
        raise MalformedModel(f"facet {args.facet} out of range (chamber has {len(ws)})")
    rec = wc.cross_wall(c, ws[args.facet])
    wc.verify_crossing(rec, q)
    return {"model": model.name, "crossing": ser.crossing_json(rec)}


def _explore(args, q):
    try:
        return wc.explore(q, _theta(args, q), args.max), None
    except DimerWallError as exc:
        g = getattr(exc, "graph", None)
        if g is None:
            raise
        return g, exc


def _write_dot(args, g):
    if args.dot:
        Path(args.dot).write_text(ser.graph_dot(g))


def cmd_explore(args):
    model, q = _load(args)
    g, err = _explore(args, q)
    _write_dot(args, g)
    out = {"model": model.name, "graph": ser.graph_json(g),
           "involution": wc.involution_holds(g) if g.complete else None}
    if err is not None:
        out.update(err.to_json())
        return out, err.exit_status
    return out


def _summary(rep, geometry_ok):
    kinds = sorted({t.split("-")[0] for t in rep["wall_types"]})
    if not kinds:
        walls = "none"
    elif len(kinds) == 1:
        walls = f"all type {kinds[0]}"
    else:
        walls = "types " + ", ".join(kinds)
    return (f"triangulations realized: {rep['triangulations_realized']}/{rep['triangulations_total']}; "
            f"walls: {walls}; geometry-chamber match: {str(geometry_ok).lower()}")


def cmd_report(args):
    model, q = _load(args)
    g, err = _explore(args, q)
    _write_dot(args, g)
    if err is not None:
        out = {"model": model.name, "graph": ser.graph_json(g)}
        out.update(err.to_json())
        return out, err.exit_status
    rep = wc.reachability_report(g, q)
    geometry_ok = True
    for key in g.order:
        try:
            ch.chamber_from_geometry(g.nodes[key])
        except DimerWallError:
            geometry_ok = False
    agreement = all(r.agreement for r in g.edges)
    index = {k: i for i, k in enumerate(g.order)}
    return {
        "model": model.name,
        "summary": _summary(rep, geometry_ok),
        "chambers": len(g.nodes),
        "walls": len(wc.walls_of(g)),
        "triangulations_total": rep["triangulations_total"],
        "triangulations_realized": rep["triangulations_realized"],
        "missing": rep["missing"],
        "wall_types": rep["wall_types"],
        "crossings_agree": agreement,
        "involution": wc.involution_holds(g),
        "geometry_chamber_match": geometry_ok,
        "nef_images": {str(index[k]): [ser.vec(v) for v in imgs]
                       for k, imgs in rep["nef_images"].items()},
        "graph": ser.graph_json(g),
    }


def cmd_census(args):
    model, q = _load(args)
    rep = wc.path_census(q, args.max_len)
    return {"model": model.name, "max_len": args.max_len,
            "pairs": [dict(source=v, target=w, **r) for (v, w), r in sorted(rep.items())],
            "rewrite_agrees": all(r["rewrite_agrees"] for r in rep.values()),
            "weights_distinct": all(r["weights_distinct"] for r in rep.values())}


COMMANDS = {
    "validate": cmd_validate, "quiver": cmd_quiver, "matchings": cmd_matchings,
    "polygon": cmd_polygon, "fan": cmd_fan, "chamber": cmd_chamber, "walls": cmd_walls,
    "cross": cmd_cross, "explore": cmd_explore, "report": cmd_report,
    "census-paths": cmd_census,
}


def build_parser():
    p = argparse.ArgumentParser(prog="dimerwall", description=__doc__.splitlines()[0])
    p.add_argument("--regen-fixtures", metavar="DIR", nargs="?", const="tests/fixtures",
                   help="regenerate golden fixtures with the brute-force oracles")
    sub = p.add_subparsers(dest="command")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("model", help="model file or catalog:NAME")
        sp.add_argument("--output", "-o", help="write JSON here instead of stdout")
        if name in ("fan", "chamber", "walls", "cross", "explore", "report"):
            sp.add_argument("--theta", help="comma-separated stability parameter")
        if name == "cross":
            sp.add_argument("--facet", type=int, required=True)
        if name in ("explore", "report"):
            sp.add_argument("--max", type=_budget, default=64, help="chamber budget")
            sp.add_argument("--dot", help="also write the chamber graph as DOT")
        if name == "census-paths":
            sp.add_argument("--max-len", type=int, required=True)
    return p


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.regen_fixtures:
        from .fixtures import regenerate
        for path in regenerate(args.regen_fixtures):
            stdout.write(f"wrote {path}\n")
        return 0
    if not args.command:
        build_parser().print_usage(stdout)
        return 1
    status = 0
    try:
        out = COMMANDS[args.command](args)
        if isinstance(out, tuple):
            out, status = out
    except DimerWallError as exc:
        out, status = exc.to_json(), exc.exit_status
    text = ser.dumps(out)
    if getattr(args, "output", None) and status == 0:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return status


def main():
    sys.exit(run())
