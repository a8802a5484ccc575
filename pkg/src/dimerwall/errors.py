"""Exception hierarchy.

Every error carries a stable ``code`` (its class name) so the CLI can emit a
machine-readable diagnostic.  Domain errors exit with status 1, invariant
violations with status 2.
"""


class DimerWallError(Exception):
    exit_status = 1

    @property
    def code(self):
        return type(self).__name__

    def to_json(self):
        return {"error": self.code, "module": ORIGIN.get(self.code, "dimerwall"),
                "message": str(self)}


class InvariantViolation(DimerWallError):
    """A structural invariant failed; signals a bug or an invalid model."""

    exit_status = 2


# exactlin
class EmptyInterior(DimerWallError):
    pass


class DegeneratePolygon(DimerWallError):
    pass


# dimer / model files
class MalformedModel(DimerWallError):
    pass


class NotBipartite(DimerWallError):
    pass


class UnivalentNode(DimerWallError):
    pass


class NotTorusCellular(DimerWallError):
    pass


class Disconnected(DimerWallError):
    pass


class NoPerfectMatching(DimerWallError):
    pass


class DegenerateModel(DimerWallError):
    """Some edge lies in no perfect matching."""


class UnknownModel(DimerWallError):
    pass


# reps
class InadmissiblePattern(DimerWallError):
    pass


class NonGenericParameter(DimerWallError):
    pass


class RankError(InvariantViolation):
    pass


class LatticeInvariant(InvariantViolation):
    pass


# moduli
class FanConsistency(InvariantViolation):
    pass


class Unreachable(InvariantViolation):
    pass


class NonCompactCurve(DimerWallError):
    pass


class NonCompactDivisor(DimerWallError):
    pass


# chambers
class WallAmbiguity(InvariantViolation):
    pass


class TypeII(InvariantViolation):
    pass


class TopologyMismatch(InvariantViolation):
    pass


class GeometryMismatch(InvariantViolation):
    pass


# wallcross
class DegreeViolation(InvariantViolation):
    pass


class BudgetExceeded(DimerWallError):
    pass


ORIGIN = {
    **dict.fromkeys(["EmptyInterior", "DegeneratePolygon"], "exactlin"),
    **dict.fromkeys(["MalformedModel", "NotBipartite", "UnivalentNode", "NotTorusCellular",
                     "Disconnected", "NoPerfectMatching", "DegenerateModel"], "dimer"),
    "UnknownModel": "cli",
    **dict.fromkeys(["InadmissiblePattern", "NonGenericParameter", "RankError",
                     "LatticeInvariant"], "reps"),
    **dict.fromkeys(["FanConsistency", "Unreachable", "NonCompactCurve",
                     "NonCompactDivisor"], "moduli"),
    **dict.fromkeys(["WallAmbiguity", "TypeII", "TopologyMismatch", "GeometryMismatch"],
                    "chambers"),
    **dict.fromkeys(["DegreeViolation", "BudgetExceeded"], "wallcross"),
}
