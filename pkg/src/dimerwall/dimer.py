"""Dimer models on the two-torus and their dual quivers with relations.

A model is purely combinatorial: every edge joins a black node to a white
node and carries a winding vector (the deck translation taking the black
endpoint's copy to the white endpoint's copy), and every node carries the
counterclockwise cyclic order of its edges.  Faces are traced from this
rotation system.

Conventions, with an edge e drawn from its black node to its white node:

* L(e) / R(e) are the faces on the left / right of e;
* the dual arrow of e runs R(e) -> L(e), so the white node is on its right;
* around a white node arrows circulate clockwise, around a black node
  counterclockwise, which fixes p_plus(a) and p_minus(a).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import exactlin as el
from .errors import (DegenerateModel, DegeneratePolygon, Disconnected, MalformedModel,
                     NoPerfectMatching, NotBipartite, NotTorusCellular, UnivalentNode)


@dataclass(frozen=True)
class Edge:
    id: str
    black: str
    white: str
    winding: tuple


@dataclass(frozen=True)
class DimerModel:
    name: str
    black: tuple
    white: tuple
    edges: tuple
    rotation: dict = field(hash=False)
    v0: int = None           # default: source face of arrow 0

    @property
    def nodes(self):
        return self.black + self.white

    def edge_index(self):
        return {e.id: i for i, e in enumerate(self.edges)}


# ------------------------------------------------------------- construction


def _angle_key(v):
    # half-plane index, then used with a cross-product comparison
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _ccw_sort(items):
    """Sort (vector, payload) pairs by exact counterclockwise angle."""
    from functools import cmp_to_key

    def cmp(a, b):
        ha, hb = _angle_key(a[0]), _angle_key(b[0])
        if ha != hb:
            return ha - hb
        c = a[0][0] * b[0][1] - a[0][1] * b[0][0]
        if c == 0:
            raise MalformedModel("two edges leave a node in the same direction")
        return -1 if c > 0 else 1

    return sorted(items, key=cmp_to_key(cmp))


def from_positions(name, black_pos, white_pos, edges, v0=None):
    """Build a model from rational node positions and straight edges.

    ``edges`` is a list of (black_id, white_id, winding); edge ids are e0, e1, ...
    The rotation at each node is the exact angular order of its edges.
    """
    E = tuple(Edge(f"e{i}", b, w, tuple(wind)) for i, (b, w, wind) in enumerate(edges))
    rot = {}
    for n, pos in list(black_pos.items()) + list(white_pos.items()):
        items = []
        for e in E:
            bp = [Fraction(c) for c in black_pos[e.black]]
            wp = [Fraction(c) + k for c, k in zip(white_pos[e.white], e.winding)]
            if e.black == n:
                items.append(((wp[0] - bp[0], wp[1] - bp[1]), e.id))
            elif e.white == n:
                items.append(((bp[0] - wp[0], bp[1] - wp[1]), e.id))
        rot[n] = tuple(eid for _, eid in _ccw_sort(items))
    return DimerModel(name, tuple(black_pos), tuple(white_pos), E, rot, v0)


# ------------------------------------------------------------------ quiver


@dataclass
class Quiver:
    """Dual quiver of a dimer model with its superpotential relations.

    Arrow i is the dual of ``model.edges[i]``.  Paths are tuples of arrow
    indices in the order they are traversed.
    """

    model: DimerModel
    n_vertices: int
    source: tuple
    target: tuple
    p_plus: tuple
    p_minus: tuple
    small_cycles: dict
    face_edges: tuple        # per face, edge indices along its boundary walk
    face_nodes: tuple        # per face, set of incident node ids
    v0: int = 0

    @property
    def n_arrows(self):
        return len(self.source)

    @cached_property
    def relations(self):
        """Exponent vectors vec(p_plus(a)) - vec(p_minus(a))."""
        out = []
        for a in range(self.n_arrows):
            v = [0] * self.n_arrows
            for b in self.p_plus[a]:
                v[b] += 1
            for b in self.p_minus[a]:
                v[b] -= 1
            out.append(tuple(v))
        return tuple(out)

    @cached_property
    def boundary_map(self):
        """Rows indexed by vertices: d(a) = e_t(a) - e_s(a)."""
        rows = [[0] * self.n_arrows for _ in range(self.n_vertices)]
        for a, (s, t) in enumerate(zip(self.source, self.target)):
            rows[t][a] += 1
            rows[s][a] -= 1
        return [tuple(r) for r in rows]

    @cached_property
    def matchings(self):
        return perfect_matchings(self.model)[0]

    @cached_property
    def reference_matching(self):
        return self.matchings[0]

    def path_vector(self, path):
        v = [0] * self.n_arrows
        for a in path:
            v[a] += 1
        return tuple(v)

    def is_path(self, path, start, end):
        at = start
        for a in path:
            if self.source[a] != at:
                return False
            at = self.target[a]
        return at == end

    def edges_of_node(self, node):
        idx = self.model.edge_index()
        return [idx[e] for e in self.model.rotation[node]]


def _check_structure(model):
    ids = set()
    for n in model.nodes:
        if n in ids:
            raise MalformedModel(f"duplicate node id {n!r}")
        ids.add(n)
    if set(model.black) & set(model.white):
        raise NotBipartite("a node is both black and white")
    eids = [e.id for e in model.edges]
    if len(set(eids)) != len(eids):
        raise MalformedModel("duplicate edge id")
    for e in model.edges:
        if e.black not in model.black or e.white not in model.white:
            raise NotBipartite(f"edge {e.id} does not join a black node to a white node")
        if len(e.winding) != 2:
            raise MalformedModel(f"edge {e.id} winding must have two entries")
    for n in model.nodes:
        inc = sorted(e.id for e in model.edges if n in (e.black, e.white))
        rot = model.rotation.get(n)
        if rot is None or sorted(rot) != inc:
            raise MalformedModel(f"rotation of node {n!r} is not a cyclic order of its edges")
        if len(inc) == 1:
            raise UnivalentNode(f"node {n!r} is univalent")
        if len(inc) == 0:
            raise Disconnected(f"node {n!r} is isolated")
    # connectivity
    adj = {n: set() for n in model.nodes}
    for e in model.edges:
        adj[e.black].add(e.white)
        adj[e.white].add(e.black)
    seen, stack = {model.nodes[0]}, [model.nodes[0]]
    while stack:
        for m in adj[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    if len(seen) != len(model.nodes):
        raise Disconnected("graph is not connected")


def _winding_lattice_index(model):
    """Index in Z^2 of the lattice of windings of closed walks (1 for a torus)."""
    # fundamental cycles w.r.t. a BFS spanning tree
    pos = {model.nodes[0]: (0, 0)}
    tree = set()
    queue = [model.nodes[0]]
    while queue:
        n = queue.pop(0)
        for i, e in enumerate(model.edges):
            if e.black == n and e.white not in pos:
                pos[e.white] = el.vadd(pos[n], e.winding)
            elif e.white == n and e.black not in pos:
                pos[e.black] = el.vsub(pos[n], e.winding)
            else:
                continue
            tree.add(i)
            queue.append(e.white if e.black == n else e.black)
    cycles = [el.vsub(el.vadd(pos[e.black], e.winding), pos[e.white])
              for i, e in enumerate(model.edges) if i not in tree]
    g = 0
    from math import gcd
    for u, v in combinations(cycles, 2):
        g = gcd(g, abs(u[0] * v[1] - u[1] * v[0]))
    return g


def validate_and_build(model):
    """Check every dimer-model invariant and build the dual quiver."""
    _check_structure(model)
    idx = model.edge_index()
    pos = {n: {idx[e]: i for i, e in enumerate(model.rotation[n])} for n in model.nodes}
    rot = {n: [idx[e] for e in model.rotation[n]] for n in model.nodes}
    E = model.edges

    # face tracing: permutation on white corners (w, i) = between rot[i], rot[i+1]
    face_of = {}
    face_edges, face_nodes, windings = [], [], []
    for w in model.white:
        for i in range(len(rot[w])):
            if (w, i) in face_of:
                continue
            f = len(face_edges)
            walk, nodes, wind = [], set(), (0, 0)
            corner = (w, i)
            while corner not in face_of:
                cw, ci = corner
                face_of[corner] = f
                e1 = rot[cw][(ci + 1) % len(rot[cw])]
                b = E[e1].black
                j = pos[b][e1]
                face_of[(b, j)] = f
                e2 = rot[b][(j + 1) % len(rot[b])]
                walk += [e1, e2]
                nodes.update((cw, b))
                wind = el.vadd(el.vsub(wind, E[e1].winding), E[e2].winding)
                corner = (E[e2].white, pos[E[e2].white][e2])
            if corner != (w, i):
                raise NotTorusCellular("face walk did not close")
            face_edges.append(tuple(walk))
            face_nodes.append(frozenset(nodes))
            windings.append(wind)
    F = len(face_edges)
    if F - len(E) + len(model.nodes) != 0:
        raise NotTorusCellular(f"Euler characteristic {F - len(E) + len(model.nodes)} != 0")
    if any(w != (0, 0) for w in windings):
        raise NotTorusCellular("a face has non-zero total winding")
    if _winding_lattice_index(model) != 1:
        raise NotTorusCellular("windings do not identify the surface with R^2/Z^2")

    source, target = [], []
    for a, e in enumerate(E):
        pb = pos[e.black][a]
        left = face_of[(e.black, pb)]
        right = face_of[(e.black, (pb - 1) % len(rot[e.black]))]
        source.append(right)
        target.append(left)

    p_plus, p_minus = [None] * len(E), [None] * len(E)
    for w in model.white:
        r = rot[w]
        k = len(r)
        for i in range(k):
            p_plus[r[i]] = tuple(r[(i - j) % k] for j in range(1, k))
    for b in model.black:
        r = rot[b]
        k = len(r)
        for i in range(k):
            p_minus[r[i]] = tuple(r[(i + j) % k] for j in range(1, k))

    small = {}
    for w in model.white:
        r = rot[w]
        for i in range(len(r)):
            v = source[r[i]]
            small.setdefault(v, (r[i],) + p_plus[r[i]])
    for b in model.black:
        r = rot[b]
        for i in range(len(r)):
            v = source[r[i]]
            small.setdefault(v, (r[i],) + p_minus[r[i]])

    v0 = source[0] if model.v0 is None else model.v0
    if not 0 <= v0 < F:
        raise MalformedModel(f"v0 = {v0} is not a face index")
    q = Quiver(model, F, tuple(source), tuple(target), tuple(p_plus), tuple(p_minus),
               small, tuple(face_edges), tuple(face_nodes), v0)
    for a in range(len(E)):
        if not (q.is_path(p_plus[a], target[a], source[a])
                and q.is_path(p_minus[a], target[a], source[a])):
            raise NotTorusCellular(f"relation paths of arrow {a} are not paths t(a) -> s(a)")
    for v, cyc in small.items():
        if not q.is_path(cyc, v, v):
            raise NotTorusCellular("small cycle is not closed")
    return q


# --------------------------------------------------------------- matchings


def perfect_matchings(model):
    """All perfect matchings (frozensets of edge indices) and the non-degeneracy flag."""
    by_black = {b: [] for b in model.black}
    for i, e in enumerate(model.edges):
        by_black[e.black].append(i)
    blacks = list(model.black)
    out = []

    def rec(k, used, chosen):
        if k == len(blacks):
            out.append(frozenset(chosen))
            return
        for i in by_black[blacks[k]]:
            w = model.edges[i].white
            if w not in used:
                used.add(w)
                chosen.append(i)
                rec(k + 1, used, chosen)
                chosen.pop()
                used.discard(w)

    if len(model.black) == len(model.white):
        rec(0, set(), [])
    if not out:
        raise NoPerfectMatching(f"model {model.name!r} has no perfect matching")
    out.sort(key=lambda D: tuple(sorted(D)))
    covered = set().union(*out)
    return out, len(covered) == len(model.edges)


def matching_class(model, D, D_ref):
    """Homology class of D - D_ref, all edges oriented black to white."""
    h = (0, 0)
    for i in D:
        h = el.vadd(h, model.edges[i].winding)
    for i in D_ref:
        h = el.vsub(h, model.edges[i].winding)
    return h


@dataclass(frozen=True)
class LatticePolygon:
    multiplicity: dict       # lattice point -> number of matchings with that class
    hull: tuple              # ccw vertices

    @property
    def normalized_area(self):
        return el.normalized_area(list(self.hull))

    @property
    def lattice_points(self):
        return el.lattice_points(list(self.hull))

    def interior_points(self):
        return [p for p in self.lattice_points
                if el.polygon_location(list(self.hull), p) == "interior"]


def require_non_degenerate(model):
    Ds, ok = perfect_matchings(model)
    if not ok:
        covered = set().union(*Ds)
        bad = [model.edges[i].id for i in range(len(model.edges)) if i not in covered]
        raise DegenerateModel(f"edges {bad} lie in no perfect matching")
    return Ds


def characteristic_polygon(model):
    Ds = require_non_degenerate(model)
    ref = Ds[0]
    mult = {}
    for D in Ds:
        h = matching_class(model, D, ref)
        mult[h] = mult.get(h, 0) + 1
    hull = el.convex_hull(list(mult))
    if len(hull) < 3:
        raise DegeneratePolygon("characteristic polygon is not two-dimensional")
    return LatticePolygon(dict(sorted(mult.items())), tuple(hull))
