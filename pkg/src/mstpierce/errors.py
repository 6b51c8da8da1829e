"""Exception types raised across the package."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DegenerateAngle(GeometryError):
    pass


class DegenerateEdge(GeometryError):
    pass


class CollinearPoints(GeometryError):
    pass


class DuplicatePoints(GeometryError):
    pass


class EmptyInstance(GeometryError):
    pass


class ZeroRadius(GeometryError):
    pass


class NotASpanningTree(GeometryError):
    pass


class PreconditionViolated(GeometryError):
    pass


class TooLarge(ValueError):
    """Input exceeds the size an exhaustive oracle is willing to enumerate."""


class OddCount(ValueError):
    pass


class ParseError(ValueError):
    pass


class NonFiniteCoordinate(ParseError):
    pass


class NonConvergence(RuntimeError):
    """Solver budget ran out before the optimum was certified.

    The best point found so far is kept on ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
