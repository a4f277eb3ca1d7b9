"""Exception types shared across the package."""


class GeopackError(Exception):
    """Base class for all geopack errors."""


class TooFewVertices(GeopackError):
    pass


class DegenerateArea(GeopackError):
    pass


class SelfIntersecting(GeopackError):
    pass


class PointOutsidePolygon(GeopackError):
    pass


class OutOfRange(GeopackError):
    pass


class EmptySet(GeopackError):
    pass


class InstanceTooLarge(GeopackError):
    pass


class Infeasible(GeopackError):
    pass


class NotASimplex(GeopackError):
    pass


class DiameterTooLarge(GeopackError):
    pass


class SideTooLong(GeopackError):
    pass


class CoverageFailure(GeopackError):
    """A constructed cover failed verification and no fallback rescued it."""


class GenerationTimeout(GeopackError):
    pass
