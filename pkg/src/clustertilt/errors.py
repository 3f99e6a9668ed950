"""Exception hierarchy.  Every error is a ValueError so callers can catch broadly."""


class ClusterTiltError(ValueError):
    """Base class for all domain errors raised by this package."""


class ParseError(ClusterTiltError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


class NonParallelRelation(ClusterTiltError):
    pass


class UnknownVertex(ClusterTiltError):
    pass


class NotAdmissible(ClusterTiltError):
    pass


class NotSubmodule(ClusterTiltError):
    pass


class NotAnnihilated(ClusterTiltError):
    pass


class RelationViolated(ClusterTiltError):
    pass


class Inconclusive(ClusterTiltError):
    pass


class NotIndecomposable(ClusterTiltError):
    pass


class MinimalSystemAmbiguous(ClusterTiltError):
    pass


class WindowTooSmall(ClusterTiltError):
    pass


class NotASource(ClusterTiltError):
    pass


class NotASink(ClusterTiltError):
    pass


class IsInjectiveError(ClusterTiltError):
    pass


class IsProjectiveError(ClusterTiltError):
    pass


class NoRightmostSlice(ClusterTiltError):
    pass


class NotStrongSink(ClusterTiltError):
    pass


class DoesNotExist(ClusterTiltError):
    pass


class NotAdmissibleSink(ClusterTiltError):
    pass


class NoAdmissibleSink(ClusterTiltError):
    pass


class NotASlice(ClusterTiltError):
    pass


class NotTreeType(ClusterTiltError):
    pass


class RecursionOrderViolated(ClusterTiltError):
    pass


class CapExceeded(ClusterTiltError):
    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class RadicalShapeUnexpected(ClusterTiltError):
    pass


class NotInTube(ClusterTiltError):
    pass
