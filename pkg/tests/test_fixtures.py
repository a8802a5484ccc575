import json
from pathlib import Path

import pytest

from dimerwall import fixtures
from dimerwall.catalog import CATALOG
from dimerwall.dimer import characteristic_polygon, perfect_matchings
from dimerwall.exactlin import enumerate_regular_unimodular_triangulations

FIXTURES = Path(__file__).parent / "fixtures"


def test_regeneration_is_byte_identical(tmp_path):
    for path in fixtures.regenerate(tmp_path):
        assert path.read_bytes() == (FIXTURES / path.name).read_bytes()


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_library_matches_frozen_oracle_values(name, quivers):
    fx = json.loads((FIXTURES / f"{name}.json").read_text())
    q = quivers[name]
    Ds, ok = perfect_matchings(q.model)
    P = characteristic_polygon(q.model)
    assert ok and len(Ds) == fx["matchings"]
    assert (q.n_vertices, len(q.model.edges), len(q.model.nodes)) == (
        fx["faces"], fx["edges"], fx["nodes"])
    assert sorted(map(list, P.hull)) == sorted(fx["hull"])
    assert P.normalized_area == fx["normalized_area"]
    assert len(P.interior_points()) == fx["interior_points"]
    tris = enumerate_regular_unimodular_triangulations(sorted(P.lattice_points))
    assert len(tris) == fx["triangulations"]
    assert fx["seed"] == list(fixtures.SEEDS[name])
