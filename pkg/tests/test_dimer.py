import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (affine_equivalent, degenerate_model, flat_winding_model,
                      twisted_rotation_model, univalent_model)
from dimerwall import exactlin as el
from dimerwall import oracles
from dimerwall.catalog import CATALOG, catalog
from dimerwall.dimer import (characteristic_polygon, matching_class, perfect_matchings,
                             validate_and_build)
from dimerwall.errors import (DegenerateModel, NotTorusCellular, UnivalentNode,
                              UnknownModel)


def test_c3_quiver():
    q = validate_and_build(catalog("c3"))
    assert q.n_vertices == 1 and q.n_arrows == 3
    assert set(q.source) == {0} and set(q.target) == {0}
    # commutator-type relations: each p_plus and p_minus use the other two loops
    for a in range(3):
        assert sorted(q.p_plus[a]) == sorted(q.p_minus[a]) == sorted({0, 1, 2} - {a})
        assert q.p_plus[a] != q.p_minus[a]
        assert q.relations[a] == (0, 0, 0)


def test_conifold_quiver():
    q = validate_and_build(catalog("conifold"))
    assert q.n_vertices == 2 and q.n_arrows == 4
    pairs = sorted(zip(q.source, q.target))
    assert pairs == [(0, 1), (0, 1), (1, 0), (1, 0)]


def test_c3z3_quiver_counts():
    m = catalog("c3z3")
    q = validate_and_build(m)
    assert (q.n_vertices, q.n_arrows, len(m.nodes)) == (3, 9, 6)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_face_count_matches_dart_oracle(name, quivers):
    q = quivers[name]
    assert q.n_vertices == oracles.face_count_by_darts(q.model)
    assert q.n_vertices == q.n_arrows - len(q.model.nodes)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_relation_paths(name, quivers):
    q = quivers[name]
    for a in range(q.n_arrows):
        assert q.is_path(q.p_plus[a], q.target[a], q.source[a])
        assert q.is_path(q.p_minus[a], q.target[a], q.source[a])
    for v, cyc in q.small_cycles.items():
        assert q.is_path(cyc, v, v)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_matching_meets_each_relation_once(name, quivers):
    q = quivers[name]
    for D in q.matchings:
        for a in range(q.n_arrows):
            inside = int(a in D)
            assert sum(b in D for b in q.p_plus[a]) == 1 - inside
            assert sum(b in D for b in q.p_minus[a]) == 1 - inside


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_small_cycles_equivalent_modulo_relations(name, quivers):
    q = quivers[name]
    rels = [r for r in q.relations if any(r)]
    for a in range(q.n_arrows):
        v = q.source[a]
        for other in ([a] + list(q.p_plus[a]), [a] + list(q.p_minus[a])):
            diff = el.vsub(q.path_vector(other), q.path_vector(q.small_cycles[v]))
            assert not any(diff) or el.integer_solve(rels, diff) is not None


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_matchings_match_subset_oracle(name):
    m = catalog(name)
    Ds, ok = perfect_matchings(m)
    assert sorted(map(sorted, Ds)) == sorted(map(sorted, oracles.matchings_by_subsets(m)))
    assert ok


def test_matching_counts_and_classes():
    con = catalog("conifold")
    Ds, _ = perfect_matchings(con)
    assert len(Ds) == 4 and all(len(D) == 1 for D in Ds)
    assert Ds[0] == frozenset({0})
    assert matching_class(con, frozenset({2}), Ds[0]) == (1, 1)
    c3 = catalog("c3")
    Ds, _ = perfect_matchings(c3)
    assert len(Ds) == 3
    assert matching_class(c3, frozenset({1}), frozenset({0})) == (1, 0)
    assert matching_class(c3, Ds[0], Ds[0]) == (0, 0)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_reference_change_translates_classes(name, data):
    m = catalog(name)
    Ds, _ = perfect_matchings(m)
    ref = data.draw(st.sampled_from(Ds))
    shift = matching_class(m, Ds[0], ref)
    for D in Ds:
        assert matching_class(m, D, ref) == el.vadd(matching_class(m, D, Ds[0]), shift)


def test_polygons():
    P = characteristic_polygon(catalog("conifold"))
    assert sorted(P.hull) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert all(m == 1 for m in P.multiplicity.values())
    P = characteristic_polygon(catalog("c3"))
    assert sorted(P.hull) == [(0, 0), (0, 1), (1, 0)]
    P = characteristic_polygon(catalog("c3z3"))
    assert P.normalized_area == 3 and len(P.interior_points()) == 1
    assert affine_equivalent(P.hull, [(1, 0), (0, 1), (-1, -1)])


def test_spp_polygon_is_the_trapezoid():
    P = characteristic_polygon(catalog("spp"))
    assert affine_equivalent(P.hull, [(0, 0), (2, 0), (1, 1), (0, 1)])
    assert not affine_equivalent(P.hull, [(0, 0), (2, 0), (0, 1)])
    assert P.normalized_area == 3


def test_affine_equivalence_helper():
    assert affine_equivalent([(0, 0), (1, 0), (0, 1)], [(5, 5), (4, 5), (5, 4)])
    assert not affine_equivalent([(0, 0), (2, 0), (0, 1)], [(0, 0), (1, 0), (0, 2), (1, 1)])
    assert not affine_equivalent([(0, 0), (1, 0), (0, 1)], [(0, 0), (2, 0), (0, 1)])


def test_catalog_sizes():
    assert (validate_and_build(catalog("c3")).n_vertices, len(catalog("c3").edges)) == (1, 3)
    assert (validate_and_build(catalog("conifold")).n_vertices, len(catalog("conifold").edges)) == (2, 4)
    with pytest.raises(UnknownModel):
        catalog("nope")


def test_invalid_models():
    with pytest.raises(UnivalentNode):
        validate_and_build(univalent_model())
    with pytest.raises(NotTorusCellular):
        validate_and_build(twisted_rotation_model())
    with pytest.raises(NotTorusCellular):
        validate_and_build(flat_winding_model())


def test_degenerate_model():
    m = degenerate_model()
    validate_and_build(m)
    Ds, ok = perfect_matchings(m)
    assert not ok and len(Ds) == 4
    with pytest.raises(DegenerateModel):
        characteristic_polygon(m)
