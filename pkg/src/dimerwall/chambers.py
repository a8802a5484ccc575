"""Chambers of the stability space, their facets and the wall types.

Stability parameters are stored in full (one entry per vertex, summing to
zero).  Cones live in reduced coordinates: the entry at vertex 0 is dropped,
so Theta_R is identified with Q^(n-1).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import exactlin as el
from . import moduli, reps
from .errors import (GeometryMismatch, TopologyMismatch, TypeII, WallAmbiguity)


# ------------------------------------------------------------- coordinates


def reduce_theta(theta):
    return tuple(Fraction(x) for x in theta[1:])


def expand_theta(eta):
    eta = tuple(Fraction(x) for x in eta)
    return (-sum(eta),) + eta


def integral_theta(eta):
    """Primitive integral full parameter on the ray of a reduced vector."""
    if not any(eta):
        return (0,) * (len(eta) + 1)
    return tuple(int(x) for x in expand_theta(el.primitive(eta)))


def subset_functional(n, R):
    """theta(chi_R) as a linear form in reduced coordinates."""
    R = set(R)
    if 0 in R:
        return tuple(-int(v not in R) for v in range(1, n))
    return tuple(int(v in R) for v in range(1, n))


def full_functional(c):
    """Reduced form of eta -> sum_v c_v eta(v)."""
    return tuple(Fraction(c[i]) - Fraction(c[0]) for i in range(1, len(c)))


def all_subset_functionals(n):
    out = set()
    for k in range(1, n):
        for R in combinations(range(n), k):
            f = subset_functional(n, R)
            if any(x < 0 for x in f if x):
                f = el.vneg(f)
            out.add(f)
    return sorted(out)


def _weighted_point(rays, avoid, lineality=()):
    """sum (j+1)^i r_i for the first j = 1, 2, ... avoiding every form in ``avoid``."""
    vecs = list(rays) + list(lineality)
    if not vecs:
        return ()
    d = len(vecs[0])
    j = 1
    while True:
        p = (Fraction(0),) * d
        for i, r in enumerate(vecs):
            p = el.vadd(p, el.vscale((j + 1) ** i, r))
        if all(el.dot(f, p) != 0 for f in avoid):
            return p
        j += 1


# ----------------------------------------------------------------- chamber


@dataclass
class Chamber:
    quiver: object
    theta: tuple                  # canonical interior parameter, full and integral
    census: frozenset             # dimension vectors chi_R
    cone: el.RationalCone         # reduced coordinates
    fan: moduli.FanModel
    classes: list

    @property
    def key(self):
        return tuple(sorted(self.cone.halfspaces))

    @property
    def dim(self):
        return self.quiver.n_vertices - 1


def _census_functional(n, chi):
    return subset_functional(n, [v for v in range(n) if chi[v]])


def chamber_of(quiver, theta):
    theta = reps.require_generic(quiver, theta)
    n = quiver.n_vertices
    census = frozenset(reps.support_census(quiver, theta))
    d = n - 1
    if d == 0:
        cone = el.RationalCone(0, (), ())
        canon = (0,)
    else:
        forms = sorted({_census_functional(n, chi) for chi in census})
        cone = el.cone_from_halfspaces(forms, d)
        eta = reduce_theta(theta)
        if not all(el.dot(h, eta) > 0 for h in cone.halfspaces):
            raise WallAmbiguity("parameter is not inside its census cone")
        p = _weighted_point(cone.generators, all_subset_functionals(n))
        canon = integral_theta(p)
    f = moduli.fan(quiver, canon)
    classes = moduli.tautological_classes(quiver, f)
    return Chamber(quiver, canon, census, cone, f, classes)


# ------------------------------------------------------------------ walls


@dataclass
class WallDescriptor:
    normal: tuple                 # primitive, reduced coordinates, positive on the chamber
    R1: frozenset
    R2: frozenset
    theta0: tuple                 # full rational parameter on the wall
    theta_prime: tuple            # full integral parameter across the wall
    r1_connected: bool = None
    r2_connected: bool = None
    boundary_components: int = None
    r1_simply_connected: bool = None
    r2_simply_connected: bool = None
    type: str = None              # '0-rigid-sub', '0-rigid-quot', '0-rigid-both', 'I', 'III'
    contracted: tuple = ()        # compact curves (ray index pairs) of degree 0 at theta0
    divisor: int = None           # contracted divisor ray (type III) or None
    unstable_divisors: tuple = () # rays whose divisor lies in the unstable locus
    unstable_dim: int = None
    unstable_patterns: tuple = ()
    notes: list = field(default_factory=list)

    @property
    def kind(self):
        return None if self.type is None else self.type.split("-")[0]


def facets(chamber):
    q = chamber.quiver
    n = q.n_vertices
    if n == 1:
        return []
    census_forms = {_census_functional(n, chi): chi for chi in chamber.census}
    others_all = all_subset_functionals(n)
    walls = []
    for h in chamber.cone.halfspaces:
        if h not in census_forms:
            raise WallAmbiguity(f"facet normal {h} is not a census functional")
        chi = census_forms[h]
        R1 = frozenset(v for v in range(n) if chi[v])
        R2 = frozenset(range(n)) - R1
        on = [r for r in chamber.cone.generators if el.dot(h, r) == 0]
        avoid = [f for f in others_all if el.rank([f, h]) == 2]
        t0 = _weighted_point(on, avoid)
        if not t0:
            t0 = (Fraction(0),) * (n - 1)
        j = 1
        while True:
            tp = el.vsub(t0, el.vscale(Fraction(1, 2 ** j), h))
            full = expand_theta(tp)
            if (reps.is_strongly_generic(q, full)
                    and all(el.dot(f, tp) > 0 for f in chamber.cone.halfspaces if f != h)
                    and el.dot(h, tp) < 0):
                break
            j += 1
        walls.append(WallDescriptor(h, R1, R2, expand_theta(t0), integral_theta(tp)))
        _fill_topology(q, walls[-1])
    return walls


# ------------------------------------------------------- region topology


def _face_edges(q, faces):
    """Edge indices in the closure of a set of faces."""
    return {a for a in range(q.n_arrows) if q.source[a] in faces or q.target[a] in faces}


def _closure_connected(q, faces):
    faces = set(faces)
    if not faces:
        return False
    start = next(iter(faces))
    seen, stack = {start}, [start]
    while stack:
        f = stack.pop()
        for g in faces:
            if g not in seen and q.face_nodes[f] & q.face_nodes[g]:
                seen.add(g)
                stack.append(g)
    return seen == faces


def _closure_euler(q, faces):
    nodes = set().union(*(q.face_nodes[f] for f in faces))
    return len(nodes) - len(_face_edges(q, faces)) + len(faces)


def boundary_edges(q, R1):
    return sorted(a for a in range(q.n_arrows)
                  if (q.source[a] in R1) != (q.target[a] in R1))


def boundary_components(q, R1):
    edges = boundary_edges(q, R1)
    model = q.model
    ends = {a: {model.edges[a].black, model.edges[a].white} for a in edges}
    comps, seen = 0, set()
    for a in edges:
        if a in seen:
            continue
        comps += 1
        seen.add(a)
        stack = [a]
        while stack:
            b = stack.pop()
            for c in edges:
                if c not in seen and ends[b] & ends[c]:
                    seen.add(c)
                    stack.append(c)
    return comps


def _fill_topology(q, wall):
    wall.r1_connected = _closure_connected(q, wall.R1)
    wall.r2_connected = _closure_connected(q, wall.R2)
    wall.boundary_components = boundary_components(q, wall.R1)
    wall.r1_simply_connected = wall.r1_connected and _closure_euler(q, wall.R1) == 1
    wall.r2_simply_connected = wall.r2_connected and _closure_euler(q, wall.R2) == 1
    if not (wall.r1_connected and wall.r2_connected):
        raise TopologyMismatch(f"wall {wall.normal}: R1 or R2 is disconnected")
    if wall.boundary_components not in (1, 2):
        raise TopologyMismatch(f"wall {wall.normal}: boundary has {wall.boundary_components} components")


# ---------------------------------------------------------- classification


def _merged_regions(fan, contracted):
    """Union-find over maximal cones glued along contracted curves."""
    parent = list(range(len(fan.cones)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in contracted:
        touching = [i for i, c in enumerate(fan.cones) if set(e) <= set(c)]
        for i in touching[1:]:
            parent[find(i)] = find(touching[0])
    groups = {}
    for i in range(len(fan.cones)):
        groups.setdefault(find(i), []).append(fan.cones[i])
    return list(groups.values())


def unstable_locus(chamber, theta0):
    q = chamber.quiver
    act = reps.torus_action(q)
    table = reps.pattern_table(q)
    n = q.n_vertices
    out = []
    for Z in reps.stable_patterns(q, chamber.theta):
        if any(reps._theta_of(theta0, n, R) <= 0 for R in table.closed_supports(Z)):
            out.append((Z, act.orbit_dimension(Z)))
    return out


def classify_wall(chamber, wall):
    fan = chamber.fan
    L0 = moduli.line_bundle(chamber.classes, wall.theta0)
    K = tuple(c.edge for c in fan.curves if moduli.curve_degree(fan, c, L0) == 0)
    for c in fan.curves:
        if moduli.curve_degree(fan, c, L0) < 0:
            raise WallAmbiguity(f"wall parameter has negative degree on curve {c.edge}")
    wall.contracted = K

    pts = fan.points
    divisor = None
    for region in _merged_regions(fan, K):
        if len(region) == 1:
            continue
        verts = {pts[i] for c in region for i in c}
        hull = el.convex_hull(list(verts))
        if el.normalized_area(hull) != len(region):
            raise WallAmbiguity("contracted region is not convex")
        for i in {i for c in region for i in c}:
            loc = el.polygon_location(hull, pts[i])
            if loc == "interior":
                raise TypeII(f"compact divisor at {pts[i]} is contracted to a point")
            if loc == "edge":
                if divisor is not None:
                    raise WallAmbiguity("more than one divisor is contracted")
                divisor = i

    locus = unstable_locus(chamber, wall.theta0)
    wall.unstable_patterns = tuple(sorted(tuple(sorted(Z)) for Z, _ in locus))
    wall.unstable_dim = max((d for _, d in locus), default=None)
    zrays = tuple(sorted(i for i, D in enumerate(fan.matchings) if any(Z == D for Z, _ in locus)))
    wall.unstable_divisors = zrays

    if divisor is not None:
        wall.type, wall.divisor = "III", divisor
        if zrays != (divisor,):
            raise WallAmbiguity(f"unstable divisors {zrays} differ from contracted divisor {divisor}")
        expected = 2
    elif len(K) == 1:
        wall.type = "I"
        if zrays:
            raise WallAmbiguity("flopping wall has a divisor in its unstable locus")
        expected = None
    elif not K:
        if not zrays:
            raise WallAmbiguity("isomorphism wall has no unstable divisor")
        sides = ("sub" if wall.r1_simply_connected else "") + ("quot" if wall.r2_simply_connected else "")
        wall.type = {"sub": "0-rigid-sub", "quot": "0-rigid-quot", "subquot": "0-rigid-both"}.get(sides)
        if wall.type is None:
            raise TopologyMismatch("neither side of an isomorphism wall is simply connected")
        expected = 1
    else:
        raise WallAmbiguity(f"contraction of {len(K)} curves is not primitive")

    _check_unstable(fan, wall, locus)
    if expected is not None and wall.boundary_components != expected:
        raise TopologyMismatch(f"type {wall.type} wall has {wall.boundary_components} boundary components")
    return wall


def _check_unstable(fan, wall, locus):
    rays_of = [{i for i, D in enumerate(fan.matchings) if D <= Z} for Z, _ in locus]
    if wall.kind == "I":
        edge = set(wall.contracted[0])
        if wall.unstable_dim != 1 or not all(edge <= r for r in rays_of):
            raise WallAmbiguity("flopping wall: unstable locus is not the contracted curve")
    else:
        z = set(wall.unstable_divisors)
        if wall.unstable_dim != 2 or not all(r & z for r in rays_of):
            raise WallAmbiguity("divisorial wall: unstable locus is not purely two-dimensional")


def walls(chamber):
    return [classify_wall(chamber, w) for w in facets(chamber)]


# ------------------------------------------------------ geometric chamber


def geometry_inequalities(chamber):
    fan, classes = chamber.fan, chamber.classes
    n = chamber.quiver.n_vertices
    forms = []
    for c in fan.curves:
        forms.append(full_functional([moduli.curve_degree(fan, c, L) + 1 for L in classes]))
    for r in fan.compact_divisors():
        for v in range(n):
            sub = [moduli.surface_chi(fan, r, el.vsub(Lw, classes[v]))[0] for Lw in classes]
            forms.append(full_functional(sub))
            # chi(L_w (x) L_v^dual (x) omega_D) with L_w - L_v = (L_v - L_w)^dual
            dual = [moduli.surface_chi(fan, r, el.vsub(classes[v], Lw))[1] for Lw in classes]
            forms.append(el.vneg(full_functional(dual)))
    return [el.primitive(f) for f in forms if any(f)]


def chamber_from_geometry(chamber):
    d = chamber.dim
    if d == 0:
        return el.RationalCone(0, (), ())
    cone = el.cone_from_halfspaces(geometry_inequalities(chamber), d)
    if tuple(sorted(cone.halfspaces)) != chamber.key:
        extra = sorted(set(cone.halfspaces) ^ set(chamber.cone.halfspaces))
        raise GeometryMismatch(f"geometric chamber differs; separating normals {extra}")
    return cone
