"""Exception types raised across the package."""


class RabiWallError(Exception):
    """Base class for all package errors."""


class ParamsOutOfRange(RabiWallError, ValueError):
    pass


class NoConvergence(RabiWallError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class MonotonicityLost(RabiWallError):
    pass


class WindowOutOfDomain(RabiWallError, ValueError):
    pass


class DegenerateFit(RabiWallError):
    """Energy fit impossible because some window carries zero energy."""

    def __init__(self, message, ratios):
        super().__init__(message)
        self.ratios = ratios


class GridMismatch(RabiWallError, ValueError):
    pass


class SupportTouchesBoundary(RabiWallError, ValueError):
    pass


class IterationStall(RabiWallError):
    pass


class ZeroCenterGap(RabiWallError):
    pass


class ReferenceNotSigned(RabiWallError):
    pass


class StabilityViolation(RabiWallError):
    pass


class NonFinite(RabiWallError):
    pass


class LevelSetMissing(RabiWallError):
    pass


class WrongAlpha(RabiWallError, ValueError):
    pass


class ConfigError(RabiWallError, ValueError):
    pass
