"""Exception hierarchy shared by the geometry and verification modules."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class InvalidTau(GeometryError):
    pass


class OffManifold(GeometryError):
    """A point does not lie on the quadric <p, p> = 1."""


class NotTangent(GeometryError):
    """A vector is not tangent to the quadric at the given point."""


class GeodesicPoint(GeometryError):
    """Geodesic curvature below the cutoff; the principal normal is undefined."""


class NotUnitSpeed(GeometryError):
    pass


class InadmissibleAngle(GeometryError):
    """cos^2(theta) outside the range in which proper biharmonic helices exist."""


class BadConjugation(GeometryError):
    """Conjugation matrix is not indefinite orthogonal or has the wrong J1 relation."""


class WrongCase(GeometryError):
    """Parameters fall in a different b^2 - 4a case than the requested family."""


class SignViolation(GeometryError):
    pass


class AngleMismatch(GeometryError):
    pass
