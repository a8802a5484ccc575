"""Crossing walls, exploring the chamber graph and the truncated path census."""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import exactlin as el
from . import chambers as ch
from . import moduli, reps
from .errors import BudgetExceeded, DegreeViolation, WallAmbiguity


@dataclass
class CrossingRecord:
    source: tuple                 # chamber key
    wall: ch.WallDescriptor
    theta_prime: tuple
    predicted_triangles: frozenset
    predicted_classes: list
    degrees: dict = field(default_factory=dict)    # vertex -> deg L_v on the contracted curve
    target: object = None         # recomputed Chamber
    agreement: bool = None
    mismatch: list = field(default_factory=list)


def _flip(fan, edge):
    cv = fan.curve(edge)
    i, j = cv.edge
    k, l = cv.opposite
    p = fan.points
    tris = set(fan.triangulation.triangles)
    for t in [(i, j, k), (i, j, l)]:
        tris.discard(tuple(sorted(p[x] for x in t)))
    for t in [(k, l, i), (k, l, j)]:
        tris.add(tuple(sorted(p[x] for x in t)))
    return frozenset(tris)


def cross_wall(chamber, wall):
    """Predict the fan and tautological classes on the far side of ``wall``."""
    if wall.type is None:
        ch.classify_wall(chamber, wall)
    q, fan, classes = chamber.quiver, chamber.fan, chamber.classes
    v0_in_r1 = q.v0 in wall.R1
    tris = fan.triangulation.triangles
    degrees = {}
    kind = wall.kind
    if kind == "I":
        cv = fan.curve(wall.contracted[0])
        degrees = {v: moduli.curve_degree(fan, cv, L) for v, L in enumerate(classes)}
        allowed = {0, -1} if v0_in_r1 else {0, 1}
        bad = {v: d for v, d in degrees.items() if d not in allowed}
        if bad:
            raise DegreeViolation(f"degrees {bad} on the flopped curve outside {sorted(allowed)}")
        new = [tuple(L) for L in classes]
        tris = _flip(fan, wall.contracted[0])
    elif kind == "III":
        cv = fan.curve(wall.contracted[0])
        degrees = {v: moduli.curve_degree(fan, cv, L) for v, L in enumerate(classes)}
        D = moduli.unit(fan, wall.divisor)
        if v0_in_r1:
            new = [el.vsub(L, D) if degrees[v] == -1 else tuple(L) for v, L in enumerate(classes)]
        else:
            new = [el.vadd(L, D) if degrees[v] == 1 else tuple(L) for v, L in enumerate(classes)]
    elif kind == "0":
        Z = tuple(int(i in wall.unstable_divisors) for i in range(len(fan.points)))
        new = [el.vsub(L, Z) if v in wall.R2 else tuple(L) for v, L in enumerate(classes)]
        base = new[q.v0]
        new = [el.vsub(L, base) for L in new]
    else:
        raise WallAmbiguity(f"cannot cross a wall of type {wall.type}")
    return CrossingRecord(chamber.key, wall, wall.theta_prime, frozenset(tris), new, degrees)


def verify_crossing(record, quiver=None):
    """Recompute the far chamber from scratch and compare with the prediction."""
    if record.target is None:
        record.target = ch.chamber_of(quiver, record.theta_prime)
    target = record.target
    fan = target.fan
    mismatch = []
    if target.fan.triangulation.triangles != record.predicted_triangles:
        mismatch.append("triangulation")
    for v, (pred, got) in enumerate(zip(record.predicted_classes, target.classes)):
        if (len(pred) != len(got)
                or moduli.canonical_class(fan, pred) != moduli.canonical_class(fan, got)):
            mismatch.append(f"class of vertex {v}")
    record.mismatch = mismatch
    record.agreement = not mismatch
    return record.agreement


# ------------------------------------------------------------ exploration


@dataclass
class ChamberGraph:
    nodes: dict = field(default_factory=dict)       # key -> Chamber
    order: list = field(default_factory=list)       # keys in discovery order
    edges: list = field(default_factory=list)       # CrossingRecords
    complete: bool = True

    def triangulations(self):
        return {k: c.fan.triangulation.triangles for k, c in self.nodes.items()}


def explore(quiver, theta_seed, max_chambers=64):
    start = ch.chamber_of(quiver, theta_seed)
    g = ChamberGraph()
    g.nodes[start.key] = start
    g.order.append(start.key)
    queue = deque([start.key])
    while queue:
        key = queue.popleft()
        c = g.nodes[key]
        for w in ch.walls(c):
            rec = cross_wall(c, w)
            target = ch.chamber_of(quiver, rec.theta_prime)
            if target.key in g.nodes:
                target = g.nodes[target.key]
            rec.target = target
            verify_crossing(rec, quiver)
            if target.key not in g.nodes:
                if len(g.nodes) >= max_chambers:
                    # the partial graph only keeps crossings between its own nodes
                    g.complete = False
                    err = BudgetExceeded(f"more than {max_chambers} chambers")
                    err.graph = g
                    raise err
                g.nodes[target.key] = target
                g.order.append(target.key)
                queue.append(target.key)
            g.edges.append(rec)
    return g


def involution_holds(graph):
    """Every crossing C -> C' has a reverse crossing C' -> C across the same hyperplane."""
    by_source = {}
    for r in graph.edges:
        by_source.setdefault(r.source, []).append(r)
    for r in graph.edges:
        back = [s for s in by_source.get(r.target.key, [])
                if s.wall.normal == el.vneg(r.wall.normal)]
        if len(back) != 1 or back[0].target.key != r.source or not back[0].agreement:
            return False
    return True


def walls_of(graph):
    """One record per undirected wall."""
    seen, out = set(), []
    for r in graph.edges:
        k = frozenset([r.source, r.target.key])
        if k not in seen:
            seen.add(k)
            out.append(r)
    return out


def reachability_report(graph, quiver):
    if not graph.complete:
        raise BudgetExceeded("reachability needs a complete chamber graph")
    pts = sorted(moduli.quiver_polygon(quiver))
    all_tris = el.enumerate_regular_unimodular_triangulations(pts)
    expected = {t.triangles for t in all_tris}
    realized = set(graph.triangulations().values())
    nef = {}
    for key in graph.order:
        c = graph.nodes[key]
        imgs = []
        for r in c.cone.generators:
            L = moduli.line_bundle(c.classes, ch.expand_theta(r))
            imgs.append(moduli.canonical_class(c.fan, L))
        nef[key] = imgs
    types = sorted({r.wall.type for r in graph.edges})
    return {
        "triangulations_total": len(expected),
        "triangulations_realized": len(realized & expected),
        "missing": sorted(sorted(t) for t in expected - realized),
        "unexpected": sorted(sorted(t) for t in realized - expected),
        "wall_types": types,
        "nef_images": nef,
    }


# -------------------------------------------------------------- path census


def _quotient_key(U, diag, x):
    y = [el.dot(row, x) for row in U]
    return tuple(y[i] % diag[i] if i < len(diag) and diag[i] else y[i] for i in range(len(y)))


def path_census(quiver, max_len, pairs=None, slack=None):
    """Paths of length <= max_len grouped by relation classes, per vertex pair.

    Rewrites may pass through paths up to ``slack`` arrows longer than
    ``max_len``; by default slack is the longest relation path, so relations
    of unequal length can still be applied near the cut-off.
    """
    nA, n = quiver.n_arrows, quiver.n_vertices
    rels = [r for r in quiver.relations if any(r)]
    if rels:
        U, S, _ = el.smith_normal_form(el.transpose(rels))
        diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    else:
        U, diag = el.identity(nA), []
    Ds = quiver.matchings
    if slack is None:
        slack = max(map(len, quiver.p_plus + quiver.p_minus), default=0)
    top = max_len + slack

    paths = [((), v, v) for v in range(n)]       # (arrows, start, end)
    frontier = list(paths)
    for _ in range(top):
        nxt = [(p + (a,), s, quiver.target[a]) for p, s, t in frontier
               for a in range(nA) if quiver.source[a] == t]
        paths += nxt
        frontier = nxt

    index = {(p, s): i for i, (p, s, _) in enumerate(paths)}
    parent = list(range(len(paths)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    subs = [(quiver.p_plus[a], quiver.p_minus[a]) for a in range(nA)]
    subs += [(m, p) for p, m in subs]
    for i, (p, s, _) in enumerate(paths):
        for old, new in subs:
            k = len(old)
            for j in range(len(p) - k + 1):
                if p[j:j + k] == old:
                    q = p[:j] + new + p[j + k:]
                    if len(q) <= top:
                        parent[find(i)] = find(index[(q, s)])

    report = {}
    for v, w in pairs or product(range(n), repeat=2):
        sel = [i for i, (p, s, t) in enumerate(paths)
               if s == v and t == w and len(p) <= max_len]
        by_exp, by_rw, weights = {}, {}, {}
        for i in sel:
            vec = quiver.path_vector(paths[i][0])
            key = _quotient_key(U, diag, vec)
            by_exp.setdefault(key, set()).add(i)
            by_rw.setdefault(find(i), set()).add(i)
            weights[key] = tuple(sum(vec[a] for a in D) for D in Ds)
        exp_parts = {frozenset(s) for s in by_exp.values()}
        rw_parts = {frozenset(s) for s in by_rw.values()}
        report[(v, w)] = {
            "paths": len(sel),
            "classes": len(exp_parts),
            "rewrite_classes": len(rw_parts),
            "rewrite_agrees": exp_parts == rw_parts,
            "weights_distinct": len(set(weights.values())) == len(weights),
        }
    return report


def cumulative_class_counts(quiver, v, max_len):
    """Number of relation classes of v -> v paths of length <= L, for L = 0..max_len."""
    return [path_census(quiver, L, pairs=[(v, v)])[(v, v)]["classes"] for L in range(max_len + 1)]
