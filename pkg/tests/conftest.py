import dataclasses
from fractions import Fraction as Fr

import pytest

from dimerwall.catalog import CATALOG, c3
from dimerwall.dimer import Edge, from_positions, validate_and_build

SEEDS = {"c3": (0,), "conifold": (1, -1), "spp": (3, -1, -2), "c3z3": (2, -1, -1)}


def degenerate_model():
    # two extra edges between b1 and w2 never appear in a perfect matching
    return from_positions(
        "degenerate",
        {"b2": (0, 0), "b1": (Fr(1, 2), Fr(1, 2))},
        {"w2": (Fr(1, 2), 0), "w1": (0, Fr(1, 2))},
        [("b2", "w2", (0, 0)), ("b2", "w2", (-1, 0)), ("b1", "w1", (0, 0)),
         ("b1", "w1", (1, 0)), ("b1", "w2", (0, 0)), ("b1", "w2", (0, 1))])


def univalent_model():
    base = c3()
    return dataclasses.replace(
        base, white=base.white + ("u",),
        edges=base.edges + (Edge("e3", "b", "u", (0, 0)),),
        rotation={**base.rotation, "b": base.rotation["b"] + ("e3",), "u": ("e3",)})


def twisted_rotation_model():
    base = c3()
    w = base.rotation["w"]
    return dataclasses.replace(base, rotation={**base.rotation, "w": (w[0], w[2], w[1])})


def flat_winding_model():
    base = c3()
    return dataclasses.replace(
        base, edges=tuple(dataclasses.replace(e, winding=(0, 0)) for e in base.edges))


@pytest.fixture(scope="session")
def quivers():
    return {name: validate_and_build(f()) for name, f in CATALOG.items()}


@pytest.fixture(scope="session")
def graphs(quivers):
    from dimerwall.wallcross import explore
    return {name: explore(q, SEEDS[name]) for name, q in quivers.items()}


def affine_equivalent(P, Q):
    """True if some affine unimodular map sends the vertex set of P onto that of Q."""
    from fractions import Fraction
    from itertools import permutations

    from dimerwall import exactlin as el

    P, Q = el.convex_hull(P), el.convex_hull(Q)
    if len(P) != len(Q):
        return False
    p0, p1, p2 = P[0], P[1], P[2]
    u, v = el.vsub(p1, p0), el.vsub(p2, p0)
    d = u[0] * v[1] - u[1] * v[0]
    for q0, q1, q2 in permutations(Q, 3):
        a, b = el.vsub(q1, q0), el.vsub(q2, q0)
        # A u = a, A v = b  =>  A = [a b] [u v]^-1
        inv = [[Fraction(v[1], d), Fraction(-v[0], d)], [Fraction(-u[1], d), Fraction(u[0], d)]]
        A = [[a[i] * inv[0][j] + b[i] * inv[1][j] for j in range(2)] for i in range(2)]
        if any(x.denominator != 1 for row in A for x in row):
            continue
        if abs(A[0][0] * A[1][1] - A[0][1] * A[1][0]) != 1:
            continue
        image = {tuple(int(q0[i] + A[i][0] * (p[0] - p0[0]) + A[i][1] * (p[1] - p0[1]))
                       for i in range(2)) for p in P}
        if image == set(Q):
            return True
    return False


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        checks = mod.RESULTS[k]
        failed = sorted({label for label, ok in checks if not ok})
        line = f"criterion {k}: {'PASS' if not failed else 'FAIL'} ({len(checks)} checks)"
        if failed:
            line += "; failed: " + "; ".join(failed)
        terminalreporter.write_line(line)
