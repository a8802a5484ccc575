"""Built-in brane tilings.

Each model is drawn with exact rational node positions in a fundamental
domain of R^2/Z^2 so that the rotation system is read off from edge
directions rather than typed by hand.
"""

from fractions import Fraction as Fr

from . import exactlin as el
from .dimer import from_positions
from .errors import UnknownModel


def c3():
    return from_positions(
        "c3", {"b": (0, 0)}, {"w": (Fr(-1, 3), Fr(-1, 3))},
        [("b", "w", (0, 0)), ("b", "w", (1, 0)), ("b", "w", (0, 1))])


def conifold():
    return from_positions(
        "conifold", {"b": (0, 0)}, {"w": (Fr(-1, 2), Fr(-1, 2))},
        [("b", "w", w) for w in [(0, 0), (1, 0), (1, 1), (0, 1)]])


def _honeycomb_quotient(name, basis, cosets):
    """Quotient of the hexagonal tiling by the sublattice spanned by ``basis``.

    The hexagonal tiling has black nodes at Z^2 and white nodes at
    Z^2 + (-1/3, -1/3); black p is joined to the whites p + w0 + t for
    t in {(0,0), (1,0), (0,1)}.  ``cosets`` lists representatives of Z^2
    modulo the sublattice.
    """
    P = [[basis[0][0], basis[1][0]], [basis[0][1], basis[1][1]]]
    d = el.det(P)
    Pinv = [[Fr(P[1][1], d), Fr(-P[0][1], d)], [Fr(-P[1][0], d), Fr(P[0][0], d)]]

    def to_torus(x):
        return tuple(Pinv[i][0] * x[0] + Pinv[i][1] * x[1] for i in range(2))

    def reduce(q):
        for k, c in enumerate(cosets):
            lam = to_torus(el.vsub(q, c))
            if all(x.denominator == 1 for x in lam):
                return k, tuple(int(x) for x in lam)
        raise AssertionError("coset list incomplete")

    w0 = (Fr(-1, 3), Fr(-1, 3))
    black = {f"b{k}": to_torus(c) for k, c in enumerate(cosets)}
    white = {f"w{k}": to_torus(el.vadd(c, w0)) for k, c in enumerate(cosets)}
    edges = []
    for k, c in enumerate(cosets):
        for t in [(0, 0), (1, 0), (0, 1)]:
            j, lam = reduce(el.vadd(c, t))
            edges.append((f"b{k}", f"w{j}", lam))
    return from_positions(name, black, white, edges)


def c3z3():
    return _honeycomb_quotient("c3z3", [(1, 1), (-1, 2)], [(0, 0), (1, 0), (2, 0)])


def spp():
    black = {"b0": (0, 0), "b1": (Fr(1, 2), 0)}
    white = {"w0": (Fr(-1, 6), Fr(-1, 3)), "w1": (Fr(1, 3), Fr(-1, 3))}
    edges = [("b0", "w0", (0, 0)), ("b0", "w1", (0, 0)), ("b0", "w0", (0, 1)),
             ("b1", "w1", (0, 0)), ("b1", "w0", (1, 0)), ("b1", "w1", (0, 1)),
             ("b0", "w1", (0, 1))]
    return from_positions("spp", black, white, edges)


CATALOG = {"c3": c3, "conifold": conifold, "spp": spp, "c3z3": c3z3}


def catalog(name):
    try:
        return CATALOG[name]()
    except KeyError:
        raise UnknownModel(f"no catalog model named {name!r}") from None
