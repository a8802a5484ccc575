"""Golden fixtures for the catalog, produced by the brute-force oracles only."""

from pathlib import Path

from . import exactlin as el
from . import oracles
from .catalog import CATALOG
from .dimer import matching_class, validate_and_build
from .serialize import dumps

SEEDS = {"c3": (0,), "conifold": (1, -1), "spp": (3, -1, -2), "c3z3": (2, -1, -1)}
SAMPLE_RADIUS = 3


def fixture(name):
    model = CATALOG[name]()
    q = validate_and_build(model)
    Ds = sorted(oracles.matchings_by_subsets(model), key=lambda D: tuple(sorted(D)))
    classes = sorted(matching_class(model, D, Ds[0]) for D in Ds)
    hull = el.convex_hull(classes)
    pts = el.lattice_points(hull)
    regions = oracles.chamber_regions_by_sampling(q, SAMPLE_RADIUS)
    return {
        "name": name,
        "faces": oracles.face_count_by_darts(model),
        "edges": len(model.edges),
        "nodes": len(model.nodes),
        "matchings": len(Ds),
        "matching_classes": [list(c) for c in classes],
        "hull": [list(p) for p in hull],
        "normalized_area": el.normalized_area(hull),
        "interior_points": sum(el.polygon_location(hull, p) == "interior" for p in pts),
        "triangulations": oracles.triangulation_count_by_flips(pts),
        "seed": list(SEEDS[name]),
        "sampled_chambers": len(regions),
        "chamber_representatives": sorted(list(t) for t in regions.values()),
    }


def regenerate(directory):
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(CATALOG):
        path = d / f"{name}.json"
        path.write_text(dumps(fixture(name)))
        written.append(path)
    return written
