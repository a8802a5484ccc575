"""Brute-force reference computations.

These deliberately avoid the fast paths of the main modules (bitmask
tables, exact-cover search, cone algebra) and are used to generate the
golden fixtures and to cross-check the main code in tests.
"""

from itertools import combinations, product
from math import comb

from . import exactlin as el


def matchings_by_subsets(model):
    """All perfect matchings found by testing every edge subset of size |B|."""
    k = len(model.black)
    out = []
    for S in combinations(range(len(model.edges)), k):
        ends = [model.edges[i].black for i in S] + [model.edges[i].white for i in S]
        if len(set(ends)) == len(model.nodes):
            out.append(frozenset(S))
    return out


def face_count_by_darts(model):
    """Cycles of the face permutation on edges.

    Each face boundary alternates between turning at a white node and at a
    black node; following 'next edge counterclockwise at the white end, then
    next counterclockwise at the black end' visits each face once per pair
    of its boundary edges.
    """
    def nxt(node, e):
        r = model.rotation[node]
        return r[(r.index(e) + 1) % len(r)]

    by_id = {e.id: e for e in model.edges}
    seen, cycles = set(), 0
    for e in model.edges:
        if e.id in seen:
            continue
        cycles += 1
        x = e.id
        while x not in seen:
            seen.add(x)
            y = nxt(by_id[x].white, x)
            x = nxt(by_id[y].black, y)
    return cycles


def admissible_by_evaluation(quiver, zeros):
    """Set arrows in ``zeros`` to 0 and all others to 1; check every relation."""
    val = [0 if a in zeros else 1 for a in range(quiver.n_arrows)]

    def prod(path):
        out = 1
        for a in path:
            out *= val[a]
        return out

    return all(prod(quiver.p_plus[a]) == prod(quiver.p_minus[a]) for a in range(quiver.n_arrows))


def submodule_supports(quiver, zeros):
    """Proper nonempty vertex sets closed under the nonzero arrows."""
    n = quiver.n_vertices
    out = []
    for k in range(1, n):
        for R in combinations(range(n), k):
            R = set(R)
            if all(quiver.target[a] in R for a in range(quiver.n_arrows)
                   if a not in zeros and quiver.source[a] in R):
                out.append(frozenset(R))
    return out


def stable_zero_sets(quiver, theta):
    """All theta-stable admissible zero sets, found pattern by pattern."""
    out = []
    for bits in product((0, 1), repeat=quiver.n_arrows):
        zeros = frozenset(a for a, b in enumerate(bits) if b)
        if not admissible_by_evaluation(quiver, zeros):
            continue
        if all(sum(theta[v] for v in R) > 0 for R in submodule_supports(quiver, zeros)):
            out.append(zeros)
    return frozenset(out)


def is_generic(n, theta):
    return all(sum(theta[v] for v in R) != 0
               for k in range(1, n) for R in combinations(range(n), k))


def chamber_regions_by_sampling(quiver, radius):
    """Distinct stable sets over generic integral theta in a box, keyed by set.

    Returns {stable set: first theta (in sorted box order) realizing it}.
    """
    n = quiver.n_vertices
    if n == 1:
        return {stable_zero_sets(quiver, (0,)): (0,)}
    regions = {}
    for eta in product(range(-radius, radius + 1), repeat=n - 1):
        theta = (-sum(eta),) + eta
        if not is_generic(n, theta):
            continue
        S = stable_zero_sets(quiver, theta)
        regions.setdefault(S, theta)
    return regions


def monomial_count(n_vars, max_degree):
    """Commutative monomials of degree <= max_degree."""
    return comb(max_degree + n_vars, n_vars)


def triangulation_count_by_flips(points):
    """Unimodular triangulations reached from one by diagonal flips.

    Every unimodular triangulation of a lattice polygon is connected to any
    other by flips of unit parallelograms, so this enumerates them all.
    """
    start = el.enumerate_regular_unimodular_triangulations(points)[0].triangles
    seen, stack = {start}, [start]
    while stack:
        tris = stack.pop()
        for s, t in combinations(tris, 2):
            shared = set(s) & set(t)
            if len(shared) != 2:
                continue
            a, b = (set(s) - shared).pop(), (set(t) - shared).pop()
            p, q = sorted(shared)
            new1, new2 = tuple(sorted((a, b, p))), tuple(sorted((a, b, q)))
            if abs(el.cross2(*new1)) == 1 and abs(el.cross2(*new2)) == 1 \
                    and el.interiors_disjoint(new1, new2):
                flipped = frozenset(tris - {s, t} | {new1, new2})
                if flipped not in seen:
                    seen.add(flipped)
                    stack.append(flipped)
    return len(seen)
