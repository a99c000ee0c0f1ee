"""Exception hierarchy shared across the package."""


class MixSplineError(Exception):
    """Base class for all errors raised by this package."""


# mesh construction / queries
class MeshError(MixSplineError):
    pass


class OverlappingFaces(MeshError):
    pass


class DisconnectedDomain(MeshError):
    pass


class DegenerateFace(MeshError):
    pass


class PointOnFaceBoundary(MeshError):
    pass


class NotASegment(MeshError):
    pass


class UnknownVertex(MeshError):
    pass


class BoundaryEdge(MeshError):
    pass


class BoundaryVertex(MeshError):
    pass


# smoothness distributions
class SmoothnessError(MixSplineError):
    pass


class InvalidDistribution(SmoothnessError):
    pass


class MeshMismatch(SmoothnessError):
    pass


class NotAReduction(SmoothnessError):
    pass


# certification
class CertificationError(MixSplineError):
    pass


class NotBelowBase(CertificationError):
    pass


class BaseNotCertified(CertificationError):
    pass


class InvalidCertificate(CertificationError):
    pass


# files / CLI
class ParseError(MixSplineError):
    """Malformed input file; carries 1-based ``line`` and ``column`` when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ParamOutOfRange(MixSplineError):
    pass
