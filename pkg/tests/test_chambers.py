import dataclasses
import json
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import SEEDS
from dimerwall import chambers as ch
from dimerwall import exactlin as el
from dimerwall import oracles, reps
from dimerwall.catalog import CATALOG
from dimerwall.errors import GeometryMismatch, NonGenericParameter

FIXTURES = Path(__file__).parent / "fixtures"


def test_theta_coordinates():
    assert ch.reduce_theta((2, -1, -1)) == (-1, -1)
    assert ch.expand_theta((-1, -1)) == (2, -1, -1)
    assert ch.integral_theta((Fraction(1, 2), Fraction(-1, 3))) == (-1, 3, -2)
    assert ch.subset_functional(3, [1]) == (1, 0)
    assert ch.subset_functional(3, [0, 1]) == (0, -1)


def test_subset_functional_evaluates_theta():
    theta = (5, -2, -3)
    for R in ([0], [1], [0, 2], [1, 2]):
        f = ch.subset_functional(3, R)
        assert el.dot(f, ch.reduce_theta(theta)) == sum(theta[v] for v in R)


def test_c3_chamber(quivers):
    c = ch.chamber_of(quivers["c3"], (0,))
    assert c.dim == 0 and c.census == frozenset()
    assert ch.walls(c) == []


def test_conifold_chamber(quivers):
    c = ch.chamber_of(quivers["conifold"], (1, -1))
    assert c.census == {(1, 0)}
    assert c.cone.halfspaces == ((-1,),)
    assert c.theta == (1, -1)
    (w,) = ch.walls(c)
    assert w.type == "I" and w.R1 == {0}
    assert w.boundary_components == 1
    assert reps.support_census(quivers["conifold"], w.theta_prime) == {(0, 1)}


def test_chamber_rejects_non_generic(quivers):
    with pytest.raises(NonGenericParameter):
        ch.chamber_of(quivers["spp"], (1, -1, 0))


@pytest.mark.parametrize("name", ["conifold", "spp", "c3z3"])
def test_stable_set_constant_inside_chamber(name, quivers):
    q = quivers[name]
    c = ch.chamber_of(q, SEEDS[name])
    base = set(reps.stable_patterns(q, c.theta))
    eta = ch.reduce_theta(c.theta)
    gens = c.cone.generators
    points = [eta] + [el.vadd(el.vscale(4, eta), g) for g in gens]
    assert len(points) >= 2
    for p in points[:4]:
        theta = ch.integral_theta(p)
        assert all(el.dot(h, ch.reduce_theta(theta)) > 0 for h in c.cone.halfspaces)
        assert set(reps.stable_patterns(q, theta)) == base


@pytest.mark.parametrize("name", ["conifold", "spp", "c3z3"])
def test_wall_parameters(name, quivers):
    q = quivers[name]
    c = ch.chamber_of(q, SEEDS[name])
    for w in ch.walls(c):
        eta0 = ch.reduce_theta(w.theta0)
        assert el.dot(w.normal, eta0) == 0
        assert all(el.dot(h, eta0) > 0 for h in c.cone.halfspaces if h != w.normal)
        assert el.dot(w.normal, ch.reduce_theta(w.theta_prime)) < 0
        assert reps.is_strongly_generic(q, w.theta_prime)
        assert w.r1_connected and w.r2_connected
        if w.kind != "I":
            assert w.boundary_components == (1 if w.kind == "0" else 2)


def test_c3z3_walls_are_type_zero(quivers):
    c = ch.chamber_of(quivers["c3z3"], SEEDS["c3z3"])
    ws = ch.walls(c)
    assert ws and all(w.kind == "0" for w in ws)
    assert all(w.type in ("0-rigid-sub", "0-rigid-quot", "0-rigid-both") for w in ws)


def test_spp_has_flop_and_divisor_walls(graphs):
    kinds = {r.wall.kind for r in graphs["spp"].edges}
    assert kinds == {"I", "III"}
    for r in graphs["spp"].edges:
        if r.wall.kind == "III":
            assert r.wall.unstable_divisors == (r.wall.divisor,)


def test_boundary_components_examples(quivers):
    q = quivers["conifold"]
    # the face boundary is the whole edge graph, which is connected
    assert ch.boundary_components(q, frozenset({0})) == 1
    q = quivers["c3z3"]
    assert ch.boundary_components(q, frozenset({0})) == 1


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_geometry_recovers_chamber(name, graphs):
    for c in graphs[name].nodes.values():
        cone = ch.chamber_from_geometry(c)
        assert tuple(sorted(cone.halfspaces)) == c.key


def test_geometry_mismatch_detected(graphs):
    g = graphs["spp"]
    a, b = (g.nodes[k] for k in g.order[:2])
    hybrid = dataclasses.replace(a, fan=b.fan, classes=b.classes)
    with pytest.raises(GeometryMismatch):
        ch.chamber_from_geometry(hybrid)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_chamber_count_matches_sampling_oracle(name, graphs, quivers):
    fixture = json.loads((FIXTURES / f"{name}.json").read_text())
    g = graphs[name]
    assert len(g.nodes) == fixture["sampled_chambers"]
    for theta in fixture["chamber_representatives"]:
        assert ch.chamber_of(quivers[name], tuple(theta)).key in g.nodes


def test_sampling_oracle_regions_are_distinct(quivers):
    regions = oracles.chamber_regions_by_sampling(quivers["spp"], 2)
    assert len(set(regions)) == len(regions)
