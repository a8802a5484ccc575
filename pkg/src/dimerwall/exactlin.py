"""Exact integer and rational linear algebra, cones, and lattice polygons.

Nothing here touches floating point.  Vectors are tuples of ``int`` or
``Fraction``; matrices are lists of row tuples.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd

from .errors import DegeneratePolygon, EmptyInterior

# ---------------------------------------------------------------- vectors


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def vneg(u):
    return tuple(-a for a in u)


def primitive(v):
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def identity(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def matmul(A, B):
    Bt = list(zip(*B)) if B else []
    return [tuple(dot(row, col) for col in Bt) for row in A]


def transpose(A, ncols=None):
    if not A:
        return [tuple() for _ in range(ncols or 0)]
    return [tuple(col) for col in zip(*A)]


# ---------------------------------------------------------- rational algebra


def rref(rows, ncols):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, ncols=None):
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {x : rows x = 0} as primitive integer vectors.

    The basis is read off the reduced echelon form, so it depends only on the
    row space of ``rows``.
    """
    R, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(primitive(x))
    return basis


def solve(rows, rhs, ncols):
    """One rational solution of rows x = rhs, or None if inconsistent."""
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def det(M):
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(x) for x in r] for r in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(d) if d.denominator == 1 else d


# ---------------------------------------------------------- integer algebra


def smith_normal_form(M):
    """Return (U, S, V) with U*M*V = S, U and V unimodular.

    S is diagonal with non-negative entries d1 | d2 | ...
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return ([tuple(r) for r in U], [tuple(r) for r in A], [tuple(r) for r in V])


def integer_kernel(M, ncols):
    """Lattice basis of {x in Z^ncols : M x = 0} (saturated)."""
    if not M:
        return identity(ncols)
    _, S, V = smith_normal_form(M)
    r = sum(1 for i in range(min(len(S), ncols)) if S[i][i] != 0)
    return [tuple(V[i][j] for i in range(ncols)) for j in range(r, ncols)]


def integer_solve(basis, v):
    """Integer coordinates of v in the lattice spanned by ``basis`` or None."""
    n = len(v)
    cols = transpose(list(basis), n) if basis else []
    x = solve(cols, v, len(basis)) if basis else (() if all(a == 0 for a in v) else None)
    if x is None:
        return None
    if any(Fraction(c).denominator != 1 for c in x):
        return None
    x = tuple(int(c) for c in x)
    if tuple(sum(c * b[i] for c, b in zip(x, basis)) for i in range(n)) != tuple(v):
        return None
    return x


# ------------------------------------------------------------------- cones


def _pointed_rays(ineqs, eqs, d):
    """Lineality basis and extreme rays of {x : ineqs x >= 0, eqs x = 0}.

    Rays are found by enumerating tight subsets of the right rank; this is
    exponential in general and intended for ambient rank <= ~12.
    """
    ineqs = [tuple(a) for a in ineqs]
    eqs = [tuple(e) for e in eqs]
    lin = nullspace(ineqs + eqs, d)
    extra = eqs + lin
    k = d - rank(extra, d)
    rays = set()
    if k > 0:
        for S in combinations(range(len(ineqs)), k - 1):
            system = [ineqs[i] for i in S] + extra
            if rank(system, d) != d - 1:
                continue
            r = nullspace(system, d)[0]
            for cand in (r, vneg(r)):
                if all(dot(a, cand) >= 0 for a in ineqs):
                    rays.add(cand)
    return lin, sorted(rays)


@dataclass(frozen=True)
class RationalCone:
    """A polyhedral cone kept in both generator and halfspace form.

    ``halfspaces`` are primitive normals n with n.x >= 0; a linear subspace is
    represented by a +/- pair.
    """

    ambient_rank: int
    generators: tuple
    halfspaces: tuple

    def contains(self, x):
        return all(dot(h, x) >= 0 for h in self.halfspaces)

    def strictly_contains(self, x):
        return all(dot(h, x) > 0 for h in self.halfspaces)

    @property
    def dimension(self):
        return rank(list(self.generators), self.ambient_rank) if self.generators else 0


def _canonical_lineality(lin):
    return [primitive(r) for r in rref(lin, len(lin[0]))[0]] if lin else []


def cone_dual(generators, ambient_rank):
    """Both representations of cone(generators)."""
    d = ambient_rank
    gens = [tuple(g) for g in generators if any(g)]
    lin_dual, rays_dual = _pointed_rays(gens, [], d)
    lin_dual = _canonical_lineality(lin_dual)
    halfspaces = list(rays_dual)
    for l in lin_dual:
        halfspaces += [l, vneg(l)]
    return RationalCone(d, tuple(_minimal_generators(halfspaces, d)), tuple(sorted(set(halfspaces))))


def _minimal_generators(halfspaces, d):
    lin, rays = _pointed_rays(halfspaces, [], d)
    out = list(rays)
    for l in _canonical_lineality(lin):
        out += [l, vneg(l)]
    return sorted(set(out))


def cone_from_halfspaces(halfspaces, ambient_rank):
    """Cone {x : n.x >= 0 for n in halfspaces} with irredundant normals."""
    gens = _minimal_generators([tuple(h) for h in halfspaces], ambient_rank)
    return cone_dual(gens, ambient_rank)


def interior_point(halfspaces, ambient_rank, equalities=()):
    """A deterministic integer point with n.x > 0 for all halfspaces.

    Raises EmptyInterior when the open polyhedral cone is empty.
    """
    d = ambient_rank
    hs = [tuple(h) for h in halfspaces]
    _, rays = _pointed_rays(hs, list(equalities), d)
    p = tuple(sum(r[i] for r in rays) for i in range(d))
    if not all(dot(h, p) > 0 for h in hs):
        raise EmptyInterior("open cone is empty")
    return primitive(p)


# --------------------------------------------------------------- polygons


def cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Vertices of the convex hull in counterclockwise order (monotone chain)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def normalized_area(hull):
    """Twice the Euclidean area of a convex polygon given ccw."""
    n = len(hull)
    return abs(sum(hull[i][0] * hull[(i + 1) % n][1] - hull[(i + 1) % n][0] * hull[i][1]
                   for i in range(n)))


def in_polygon(hull, p):
    """Closed containment test for a ccw convex polygon (len >= 3)."""
    n = len(hull)
    return all(cross2(hull[i], hull[(i + 1) % n], p) >= 0 for i in range(n))


def polygon_location(hull, p):
    """'vertex', 'edge', 'interior' or 'outside' for point p."""
    if tuple(p) in hull:
        return "vertex"
    n = len(hull)
    signs = [cross2(hull[i], hull[(i + 1) % n], p) for i in range(n)]
    if any(s < 0 for s in signs):
        return "outside"
    return "edge" if any(s == 0 for s in signs) else "interior"


def lattice_points(hull):
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    return sorted((x, y) for x in range(min(xs), max(xs) + 1)
                  for y in range(min(ys), max(ys) + 1) if in_polygon(hull, (x, y)))


def _tri_ccw(t):
    a, b, c = t
    return (a, b, c) if cross2(a, b, c) > 0 else (a, c, b)


def interiors_disjoint(t1, t2):
    """Separating-axis test for two non-degenerate triangles."""
    for tri in (t1, t2):
        a, b, c = _tri_ccw(tri)
        for p, q in ((a, b), (b, c), (c, a)):
            other = t2 if tri is t1 else t1
            if all(cross2(p, q, r) <= 0 for r in other):
                return True
    return False


@dataclass(frozen=True)
class Triangulation:
    """A unimodular triangulation of a lattice polygon.

    ``triangles`` is a frozenset of sorted vertex triples.
    """

    polygon: tuple
    triangles: frozenset
    heights: tuple = field(default=None, compare=False)

    @property
    def points(self):
        return sorted({p for t in self.triangles for p in t})

    def edges(self):
        """Map each edge (sorted pair) to the list of triangles containing it."""
        out = {}
        for t in sorted(self.triangles):
            for e in combinations(t, 2):
                out.setdefault(e, []).append(t)
        return out

    def interior_edges(self):
        return {e: ts for e, ts in self.edges().items() if len(ts) == 2}

    def key(self):
        return tuple(sorted(self.triangles))


def _check_polygon(points):
    hull = convex_hull(points)
    if len(hull) < 3:
        raise DegeneratePolygon("lattice points are collinear")
    return hull


def unimodular_triangles(points):
    return [t for t in combinations(sorted(points), 3)
            if abs(cross2(*t)) == 1]


def _barycentric_int(tri, p):
    """Integer barycentric coordinates of p in a unimodular triangle."""
    a, b, c = tri
    D = cross2(a, b, c)
    la = Fraction(cross2(p, b, c), D)
    lb = Fraction(cross2(a, p, c), D)
    lc = Fraction(cross2(a, b, p), D)
    return la, lb, lc


def regularity_heights(tri):
    """Heights certifying that ``tri`` is regular, or None.

    Only local folding conditions across interior edges are imposed; a
    locally convex lifting over a convex polygon is globally convex.
    """
    pts = tri.points
    idx = {p: i for i, p in enumerate(pts)}
    rows = []
    for (p, q), (t1, t2) in tri.interior_edges().items():
        d = next(x for x in t2 if x not in (p, q))
        lam = _barycentric_int(t1, d)
        row = [Fraction(0)] * len(pts)
        row[idx[d]] += 1
        for v, l in zip(t1, lam):
            row[idx[v]] -= l
        rows.append(primitive(row))
    try:
        h = interior_point(rows, len(pts))
    except EmptyInterior:
        return None
    if not rows:
        h = tuple(0 for _ in pts)
    return h


def verify_regular(tri, heights):
    """Global check: each triangle's lifted plane lies strictly below all other points."""
    pts = tri.points
    h = dict(zip(pts, heights))
    for t in tri.triangles:
        for p in pts:
            if p in t:
                continue
            lam = _barycentric_int(t, p)
            if not h[p] > sum(l * h[v] for l, v in zip(lam, t)):
                return False
    return True


def enumerate_regular_unimodular_triangulations(points):
    """All regular unimodular triangulations of conv(points).

    Exhaustive search: branch on the first uncovered sample point (triangle
    centroids), choosing among compatible unimodular triangles containing it.
    """
    hull = _check_polygon(points)
    lp = lattice_points(hull)
    area = normalized_area(hull)
    tris = unimodular_triangles(lp)
    scaled = {t: tuple((3 * x, 3 * y) for x, y in _tri_ccw(t)) for t in tris}
    samples = sorted({(sum(p[0] for p in t), sum(p[1] for p in t)) for t in tris})
    cover = {s: [t for t in tris if all(cross2(a, b, s) >= 0 for a, b in
                                        zip(scaled[t], scaled[t][1:] + scaled[t][:1]))]
             for s in samples}
    compat = {}

    def ok(t1, t2):
        key = (t1, t2) if t1 < t2 else (t2, t1)
        if key not in compat:
            compat[key] = interiors_disjoint(t1, t2)
        return compat[key]

    found = set()

    def rec(chosen, covered):
        s = next((s for s in samples if s not in covered), None)
        if s is None:
            if sum(abs(cross2(*t)) for t in chosen) == area:
                found.add(frozenset(chosen))
            return
        for t in cover[s]:
            if t in chosen or not all(ok(t, c) for c in chosen):
                continue
            newcov = set(covered)
            newcov.update(x for x in samples if t in cover[x])
            rec(chosen + [t], newcov)

    rec([], set())
    out = []
    for tset in found:
        tri = Triangulation(tuple(hull), tset)
        h = regularity_heights(tri)
        if h is not None and verify_regular(tri, h):
            out.append(Triangulation(tuple(hull), tset, h))
    return sorted(out, key=Triangulation.key)
