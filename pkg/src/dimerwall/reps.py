"""Zero-patterns of quiver representations, stability and the torus action.

A representation of dimension vector (1, ..., 1) assigns a scalar to each
arrow.  Whether it is stable depends only on which arrows vanish, so all
computations run on zero-patterns: frozensets of arrow indices.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import exactlin as el
from .dimer import matching_class, require_non_degenerate
from .errors import (InadmissiblePattern, LatticeInvariant, MalformedModel,
                     NonGenericParameter, RankError)


@dataclass(frozen=True)
class ArrowPattern:
    zero_set: frozenset

    def support(self, n_arrows):
        return frozenset(range(n_arrows)) - self.zero_set


def is_admissible(quiver, Z):
    Z = _zeros(Z)
    for a in range(quiver.n_arrows):
        plus = any(b in Z for b in quiver.p_plus[a])
        minus = any(b in Z for b in quiver.p_minus[a])
        if plus != minus:
            return False
    return True


def _zeros(Z):
    return Z.zero_set if isinstance(Z, ArrowPattern) else frozenset(Z)


def subset_vector(n, R):
    return tuple(int(v in R) for v in range(n))


class PatternTable:
    """All admissible patterns of a quiver with their closed supports.

    Supports are encoded as bitmasks over the vertices.
    """

    def __init__(self, quiver):
        self.quiver = quiver
        n, nA = quiver.n_vertices, quiver.n_arrows
        full = (1 << n) - 1
        src = [1 << s for s in quiver.source]
        tgt = [1 << t for t in quiver.target]
        self.patterns = []
        self.closed = {}
        for mask in range(1 << nA):
            Z = frozenset(a for a in range(nA) if mask >> a & 1)
            if not is_admissible(quiver, Z):
                continue
            live = [a for a in range(nA) if a not in Z]
            closed = [R for R in range(1, full)
                      if all(not (R & src[a]) or (R & tgt[a]) for a in live)]
            self.patterns.append(Z)
            self.closed[Z] = closed

    def closed_supports(self, Z):
        return self.closed[Z]


def pattern_table(quiver):
    t = quiver.__dict__.get("_pattern_table")
    if t is None:
        t = PatternTable(quiver)
        quiver.__dict__["_pattern_table"] = t
    return t


def _mask_to_set(n, R):
    return frozenset(v for v in range(n) if R >> v & 1)


def _theta_of(theta, n, R):
    return sum(theta[v] for v in range(n) if R >> v & 1)


def closed_supports(quiver, pattern):
    Z = _zeros(pattern)
    if not is_admissible(quiver, Z):
        raise InadmissiblePattern(f"pattern {sorted(Z)} violates a relation")
    n = quiver.n_vertices
    return {_mask_to_set(n, R) for R in pattern_table(quiver).closed_supports(Z)}


def check_theta(quiver, theta):
    theta = tuple(Fraction(x) for x in theta)
    if len(theta) != quiver.n_vertices:
        raise MalformedModel(f"theta has {len(theta)} entries, expected {quiver.n_vertices}")
    if sum(theta) != 0:
        raise MalformedModel("theta entries must sum to zero")
    return theta


def is_stable(quiver, pattern, theta, semistable=False):
    Z = _zeros(pattern)
    if not is_admissible(quiver, Z):
        raise InadmissiblePattern(f"pattern {sorted(Z)} violates a relation")
    theta = check_theta(quiver, theta)
    n = quiver.n_vertices
    for R in pattern_table(quiver).closed_supports(Z):
        x = _theta_of(theta, n, R)
        if x < 0 or (x == 0 and not semistable):
            return False
    return True


def is_strongly_generic(quiver, theta):
    theta = check_theta(quiver, theta)
    n = quiver.n_vertices
    return all(_theta_of(theta, n, R) != 0 for R in range(1, (1 << n) - 1))


def require_generic(quiver, theta):
    if not is_strongly_generic(quiver, theta):
        raise NonGenericParameter(f"theta = {[str(x) for x in theta]} lies on a wall")
    return check_theta(quiver, theta)


def stable_patterns(quiver, theta):
    """Admissible patterns that are theta-stable (no genericity check)."""
    theta = check_theta(quiver, theta)
    n = quiver.n_vertices
    table = pattern_table(quiver)
    return [Z for Z in table.patterns
            if all(_theta_of(theta, n, R) > 0 for R in table.closed_supports(Z))]


def support_census(quiver, theta):
    """Dimension vectors of all closed supports of theta-stable patterns."""
    theta = require_generic(quiver, theta)
    n = quiver.n_vertices
    table = pattern_table(quiver)
    out = set()
    for Z in stable_patterns(quiver, theta):
        for R in table.closed_supports(Z):
            out.add(subset_vector(n, _mask_to_set(n, R)))
    return out


# ------------------------------------------------------------ torus action


class TorusAction:
    """Linear algebra of the torus acting on representations."""

    def __init__(self, quiver):
        self.quiver = quiver
        nA = quiver.n_arrows
        self.U = el.nullspace(list(quiver.relations), nA)
        self.gauge = [r for r in quiver.boundary_map if any(r)]
        self.dim = len(self.U) - el.rank(self.gauge, nA) if self.gauge else len(self.U)

    def orbit_dimension(self, pattern):
        Z = _zeros(pattern)
        nA = self.quiver.n_arrows
        W = self.gauge + [tuple(int(b == a) for b in range(nA)) for a in sorted(Z)]
        dW = el.rank(W, nA) if W else 0
        dUW = el.rank(self.U + W, nA)
        return len(self.U) - (len(self.U) + dW - dUW)


def torus_action(quiver):
    t = quiver.__dict__.get("_torus")
    if t is None:
        t = TorusAction(quiver)
        quiver.__dict__["_torus"] = t
    return t


def orbit_dimension(quiver, pattern):
    return torus_action(quiver).orbit_dimension(pattern)


def fixed_points(quiver, theta):
    theta = require_generic(quiver, theta)
    act = torus_action(quiver)
    return [ArrowPattern(Z) for Z in stable_patterns(quiver, theta)
            if act.orbit_dimension(Z) == 0]


# ---------------------------------------------------------- weight lattice


@dataclass
class WeightLattice:
    """Character lattice of the torus with matching valuations.

    ``cycle_basis`` spans ker(d) in Z^A; ``dual_basis`` is a basis of the
    functionals on ker(d) vanishing on the relations, chosen so that every
    matching D has coordinates (h(D), 1).
    """

    quiver: object
    cycle_basis: list
    dual_basis: list
    valuations: dict

    @property
    def rank(self):
        return len(self.dual_basis)

    def weight(self, u):
        """Coordinates in Z^3 of a cycle u (given in Z^A)."""
        c = el.integer_solve(self.cycle_basis, u)
        if c is None:
            raise LatticeInvariant("vector is not a cycle")
        return tuple(el.dot(c, f) for f in self.dual_basis)


def weight_lattice(quiver):
    wl = quiver.__dict__.get("_weight_lattice")
    if wl is not None:
        return wl
    require_non_degenerate(quiver.model)
    nA = quiver.n_arrows
    K = el.integer_kernel(quiver.boundary_map, nA)
    rel_coords = []
    for r in quiver.relations:
        c = el.integer_solve(K, r)
        if c is None:
            raise LatticeInvariant("a relation is not a cycle")
        rel_coords.append(c)
    nontrivial = [c for c in rel_coords if any(c)]
    N = el.integer_kernel(nontrivial, len(K)) if nontrivial else el.identity(len(K))
    if len(N) != 3:
        raise RankError(f"torus character lattice has rank {len(N)}, expected 3")

    Ds = quiver.matchings
    ref = quiver.reference_matching
    ys, targets = {}, {}
    for D in Ds:
        g = tuple(sum(k[a] for a in D) for k in K)
        y = el.integer_solve(N, g)
        if y is None:
            raise LatticeInvariant("matching valuation does not vanish on relations")
        ys[D] = y
        targets[D] = matching_class(quiver.model, D, ref) + (1,)
    # T with T y_D = target_D for every D
    T = []
    for i in range(3):
        row = el.solve([ys[D] for D in Ds], [targets[D][i] for D in Ds], 3)
        if row is None or any(Fraction(x).denominator != 1 for x in row):
            raise LatticeInvariant("matching valuations are not (h(D), 1) in any basis")
        T.append(tuple(int(x) for x in row))
    if abs(el.det(T)) != 1:
        raise LatticeInvariant("basis change to (h(D), 1) is not unimodular")
    # g_D = sum_j y_D[j] N_j and y_D = T^-1 (h(D), 1), so functional i is
    # sum_j Tinv[j][i] N_j
    Tinv = el.transpose([tuple(int(x) for x in el.solve(T, e, 3)) for e in el.identity(3)])
    dual = [tuple(sum(Tinv[j][i] * N[j][k] for j in range(3)) for k in range(len(K)))
            for i in range(3)]
    wl = WeightLattice(quiver, K, dual, {D: targets[D] for D in Ds})
    quiver.__dict__["_weight_lattice"] = wl
    return wl
