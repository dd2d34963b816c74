"""Exception hierarchy shared by all perdel modules."""


class PerdelError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"

    def payload(self):
        """Machine-readable description used by the CLI error channel."""
        return {"error": self.code, "detail": str(self)}


class NonSymmetric(PerdelError):
    code = "non_symmetric"


class NotPositiveDefinite(PerdelError):
    code = "not_positive_definite"


class DegenerateCell(PerdelError):
    code = "degenerate_cell"


class NoCircumsphere(PerdelError):
    code = "no_circumsphere"


class SphereNotEmpty(PerdelError):
    """Raised when an alleged empty sphere strictly contains a lattice point."""

    code = "sphere_not_empty"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def payload(self):
        data = super().payload()
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


class WindowUnstable(PerdelError):
    code = "window_unstable"


class MissingWalls(PerdelError):
    code = "missing_walls"


class NotPolytopal(PerdelError):
    code = "not_polytopal"


class HypothesisViolated(PerdelError):
    code = "hypothesis_violated"


class NotFaceFitting(PerdelError):
    code = "not_face_fitting"


class Disconnected(PerdelError):
    code = "disconnected"


class UnknownName(PerdelError):
    code = "unknown_name"


class EmptySupport(PerdelError):
    code = "empty_support"


class InputFormatError(PerdelError):
    """Malformed input file or JSON payload (CLI exit status 2)."""

    code = "bad_input"
