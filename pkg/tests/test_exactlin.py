from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from hypothesis import given, settings
from hypothesis import strategies as st

from dimerwall import exactlin as el
from dimerwall.errors import DegeneratePolygon, EmptyInterior
from dimerwall.oracles import triangulation_count_by_flips

small = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_snf_examples():
    assert el.smith_normal_form(el.identity(3))[1] == el.identity(3)
    assert el.smith_normal_form([(0, 0), (0, 0)])[1] == [(0, 0), (0, 0)]
    assert el.smith_normal_form([(2, 4), (6, 8)])[1] == [(2, 0), (0, 4)]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_properties(M):
    U, S, V = el.smith_normal_form(M)
    assert [tuple(r) for r in el.matmul(el.matmul(U, M), V)] == [tuple(r) for r in S]
    assert abs(el.det(U)) == 1 and abs(el.det(V)) == 1
    d = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    # invariant factors agree with sympy
    ref = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    ref_d = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)))
    assert sorted(d) == ref_d


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_and_nullspace_match_sympy(M):
    ncols = len(M[0])
    assert el.rank(M, ncols) == sympy.Matrix(M).rank()
    ns = el.nullspace(M, ncols)
    assert len(ns) == ncols - el.rank(M, ncols)
    for v in ns:
        assert all(el.dot(r, v) == 0 for r in M)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_integer_kernel_is_saturated(M):
    ncols = len(M[0])
    K = el.integer_kernel(M, ncols)
    assert len(K) == ncols - el.rank(M, ncols)
    for v in K:
        assert all(el.dot(r, v) == 0 for r in M)
    if K:
        # saturated: the gcd of maximal minors is 1
        minors = sympy.Matrix(K).T
        g = 0
        for rows in combinations(range(ncols), len(K)):
            g = sympy.gcd(g, minors.extract(list(rows), list(range(len(K)))).det())
        assert abs(g) == 1


def test_cone_dual_examples():
    assert set(el.cone_dual([(1, 0), (0, 1)], 2).halfspaces) == {(1, 0), (0, 1)}
    assert set(el.cone_dual([(1, 0), (1, 2)], 2).halfspaces) == {(0, 1), (2, -1)}
    assert el.cone_dual([(1, 0), (-1, 0), (0, 1), (0, -1)], 2).halfspaces == ()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=5))
def test_cone_dual_is_involution(gens):
    c = el.cone_dual(gens, 3)
    for g in gens:
        assert c.contains(g)
    back = el.cone_from_halfspaces(c.halfspaces, 3)
    assert set(back.halfspaces) == set(c.halfspaces)
    for h in c.halfspaces:
        assert el.primitive(h) == tuple(h)


def test_interior_point():
    assert el.interior_point([(1,)], 1) == (1,)
    with pytest.raises(EmptyInterior):
        el.interior_point([(1, 0), (-1, 0)], 2)
    p = el.interior_point([(1, 0), (0, 1)], 2)
    assert p[0] > 0 and p[1] > 0
    assert el.interior_point([(1, 0)], 2, [(1, 1)]) == (1, -1)


def test_interior_point_is_deterministic():
    hs = [(1, 2, 0), (0, 1, -1), (1, 0, 1)]
    assert el.interior_point(hs, 3) == el.interior_point(list(hs), 3)


def test_solve_and_det():
    assert el.solve([(1, 1), (1, -1)], [2, 0], 2) == (1, 1)
    assert el.solve([(1, 1), (1, 1)], [1, 2], 2) is None
    assert el.det([(2, 1), (1, 1)]) == 1


@pytest.mark.parametrize("points,expected", [
    ([(0, 0), (1, 0), (0, 1)], 1),
    ([(0, 0), (1, 0), (0, 1), (1, 1)], 2),
    ([(0, 0), (2, -1), (1, 1)], 1),
    ([(0, 0), (2, 0), (0, 1)], 1),
    ([(0, 0), (2, 0), (1, 1), (0, 1)], 3),
    ([(0, 0), (2, 0), (0, 2)], 4),
])
def test_triangulation_counts(points, expected):
    tris = el.enumerate_regular_unimodular_triangulations(points)
    assert len(tris) == expected
    assert triangulation_count_by_flips(points) == expected
    hull = el.convex_hull(points)
    for t in tris:
        assert sum(abs(el.cross2(*x)) for x in t.triangles) == el.normalized_area(hull)
        assert el.verify_regular(t, t.heights)


def test_collinear_points_rejected():
    with pytest.raises(DegeneratePolygon):
        el.enumerate_regular_unimodular_triangulations([(0, 0), (1, 0), (2, 0)])


def test_polygon_helpers():
    hull = el.convex_hull([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)])
    assert hull == [(0, 0), (2, 0), (0, 2)]
    assert el.normalized_area(hull) == 4
    assert el.polygon_location(hull, (1, 0)) == "edge"
    assert el.polygon_location(hull, (0, 0)) == "vertex"
    assert el.polygon_location(hull, (2, 2)) == "outside"
    assert el.polygon_location(el.convex_hull([(0, 0), (3, 0), (0, 3)]), (1, 1)) == "interior"
    assert el.primitive([Fraction(2, 3), Fraction(4, 3)]) == (1, 2)
