"""The toric fan of the moduli space and divisor-level intersection theory.

All rays sit at height one, so a fan is recorded by its triangulation of the
characteristic polygon.  Divisor classes are coefficient tuples indexed by
the fan's rays, which are the lattice points of the polygon in sorted order.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import exactlin as el
from . import reps
from .errors import FanConsistency, LatticeInvariant, NonCompactCurve, NonCompactDivisor, Unreachable


@dataclass(frozen=True)
class CurveStratum:
    edge: tuple              # two ray indices, sorted
    opposite: tuple          # ray indices of the two third vertices
    a: int
    b: int

    @property
    def compact(self):
        return True


@dataclass
class FanModel:
    points: tuple            # ray lattice points (x, y); ray vector is (x, y, 1)
    matchings: tuple         # divisor matching per ray
    cones: tuple             # sorted triples of ray indices
    triangulation: el.Triangulation
    curves: tuple            # compact curves, one per interior edge

    @property
    def rays(self):
        return tuple(p + (1,) for p in self.points)

    def ray_index(self, point):
        return self.points.index(tuple(point))

    def curve(self, edge):
        edge = tuple(sorted(edge))
        for c in self.curves:
            if c.edge == edge:
                return c
        raise NonCompactCurve(f"rays {edge} do not span a compact curve")

    def compact_divisors(self):
        hull = list(self.triangulation.polygon)
        return [i for i, p in enumerate(self.points)
                if el.polygon_location(hull, p) == "interior"]

    def neighbours(self, r):
        out = set()
        for c in self.cones:
            if r in c:
                out.update(c)
        out.discard(r)
        return sorted(out)


def _curve_of(points, edge, cones):
    i, j = edge
    third = [next(k for k in c if k not in edge) for c in cones if i in c and j in c]
    if len(third) != 2:
        return None
    k, l = sorted(third)
    v = [p + (1,) for p in points]
    s = el.vadd(v[k], v[l])
    sol = el.solve([(v[i][t], v[j][t]) for t in range(3)], s, 2)
    if sol is None or any(Fraction(x).denominator != 1 for x in sol):
        raise FanConsistency(f"wall relation across {edge} is not integral")
    return CurveStratum((i, j), (k, l), int(sol[0]), int(sol[1]))


def fan(quiver, theta):
    """Fan of the moduli space for a generic stability parameter."""
    theta = reps.require_generic(quiver, theta)
    act = reps.torus_action(quiver)
    wl = reps.weight_lattice(quiver)
    matchings = set(quiver.matchings)
    stable = reps.stable_patterns(quiver, theta)
    dims = {Z: act.orbit_dimension(Z) for Z in stable}

    divisors = {}
    for Z, d in dims.items():
        if d == 2:
            if Z not in matchings:
                raise FanConsistency(f"two-dimensional orbit with zero set {sorted(Z)} is not a matching")
            p = wl.valuations[Z][:2]
            if p in divisors and divisors[p] != Z:
                raise FanConsistency(f"two divisor matchings share the class {p}")
            divisors[p] = Z
    points = tuple(sorted(divisors))
    hull = el.convex_hull(list(quiver_polygon(quiver)))
    if list(points) != el.lattice_points(hull):
        raise FanConsistency("rays are not exactly the lattice points of the polygon")
    ds = [divisors[p] for p in points]

    cones = []
    for Z, d in dims.items():
        if d == 0:
            c = tuple(i for i, D in enumerate(ds) if D <= Z)
            if len(c) != 3:
                raise FanConsistency(f"fixed point {sorted(Z)} gives a cone with {len(c)} rays")
            cones.append(c)
    cones = tuple(sorted(cones))
    _check_fan(points, cones, hull)
    # orbit-cone correspondence on every stable pattern
    cone_sets = [set(c) for c in cones]
    for Z, d in dims.items():
        face = {i for i, D in enumerate(ds) if D <= Z}
        if len(face) != 3 - d or not any(face <= c for c in cone_sets):
            raise FanConsistency(f"stable pattern {sorted(Z)} does not match a cone of the fan")

    tri = el.Triangulation(tuple(hull), frozenset(tuple(points[i] for i in c) for c in cones))
    curves = []
    for e in sorted({tuple(sorted(p)) for c in cones for p in combinations(c, 2)}):
        cv = _curve_of(points, e, cones)
        if cv is not None:
            curves.append(cv)
    return FanModel(points, tuple(ds), cones, tri, tuple(curves))


def quiver_polygon(quiver):
    wl = reps.weight_lattice(quiver)
    return {v[:2] for v in wl.valuations.values()}


def _check_fan(points, cones, hull):
    area = el.normalized_area(hull)
    if len(cones) != area:
        raise FanConsistency(f"{len(cones)} maximal cones, polygon area {area}")
    tris = [tuple(points[i] for i in c) for c in cones]
    for t in tris:
        if abs(el.cross2(*t)) != 1:
            raise FanConsistency(f"cone {t} is not unimodular")
    for s, t in combinations(tris, 2):
        if not el.interiors_disjoint(s, t):
            raise FanConsistency(f"cones {s} and {t} overlap")


# ------------------------------------------------------------ divisor classes


def principal_basis(fan_model):
    """Generators of the principal divisors: (<m, v_rho>)_rho for m = e_i."""
    return [tuple(r[i] for r in fan_model.rays) for i in range(3)]


def is_principal(fan_model, c):
    m = el.solve(fan_model.rays, c, 3)
    return m is not None and all(Fraction(x).denominator == 1 for x in m)


def linearly_equivalent(fan_model, c1, c2):
    return is_principal(fan_model, el.vsub(c1, c2))


def canonical_class(fan_model, c):
    """Representative vanishing on the lexicographically first unimodular ray triple."""
    rays = fan_model.rays
    for tri in combinations(range(len(rays)), 3):
        if abs(el.det([rays[i] for i in tri])) == 1:
            break
    m = el.solve([rays[i] for i in tri], [c[i] for i in tri], 3)
    return tuple(Fraction(x) - el.dot(m, r) for x, r in zip(c, rays))


def matching_divisor(fan_model, arrow):
    return tuple(int(arrow in D) for D in fan_model.matchings)


def tautological_classes(quiver, fan_model):
    """Divisor class of each tautological bundle, trivial at v0."""
    n = quiver.n_vertices
    cls = {quiver.v0: (0,) * len(fan_model.points)}
    queue = deque([quiver.v0])
    while queue:
        v = queue.popleft()
        for a in range(quiver.n_arrows):
            if quiver.source[a] == v and quiver.target[a] not in cls:
                cls[quiver.target[a]] = el.vadd(cls[v], matching_divisor(fan_model, a))
                queue.append(quiver.target[a])
    if len(cls) != n:
        raise Unreachable("some vertex is not reachable from v0")
    for a in range(quiver.n_arrows):
        diff = el.vsub(el.vsub(cls[quiver.target[a]], cls[quiver.source[a]]),
                       matching_divisor(fan_model, a))
        if not is_principal(fan_model, diff):
            raise LatticeInvariant(f"tautological classes are path dependent at arrow {a}")
    return [cls[v] for v in range(n)]


def line_bundle(classes, eta):
    out = (Fraction(0),) * len(classes[0])
    for c, x in zip(classes, eta):
        out = el.vadd(out, el.vscale(Fraction(x), c))
    return out


# ------------------------------------------------------------ intersections


def curve_degree(fan_model, curve, c):
    i, j = curve.edge
    k, l = curve.opposite
    return c[k] + c[l] - curve.a * c[i] - curve.b * c[j]


def curve_degrees(fan_model, c):
    return {cv.edge: curve_degree(fan_model, cv, c) for cv in fan_model.curves}


def curve_pairing(theta, curve, classes, fan_model):
    if not curve.compact:
        raise NonCompactCurve("curve is not compact")
    return sum((curve_degree(fan_model, curve, c) + 1) * Fraction(t)
               for c, t in zip(classes, theta))


def triple(fan_model, X, Y, r):
    """X . Y . D_r for a compact divisor D_r."""
    if r not in fan_model.compact_divisors():
        raise NonCompactDivisor(f"ray {fan_model.points[r]} is on the polygon boundary")
    shift = X[r]
    total = Fraction(0)
    for s in fan_model.neighbours(r):
        total += (X[s] - shift) * curve_degree(fan_model, fan_model.curve((r, s)), Y)
    return total


def unit(fan_model, r):
    return tuple(int(i == r) for i in range(len(fan_model.points)))


def surface_chi(fan_model, r, L):
    """(chi(L|_D), chi(L^dual (x) omega_D)) for the compact divisor D_r."""
    D = unit(fan_model, r)

    def rr(M):
        return 1 + Fraction(triple(fan_model, M, M, r) - triple(fan_model, M, D, r), 2)

    return rr(L), rr(el.vsub(D, L))
