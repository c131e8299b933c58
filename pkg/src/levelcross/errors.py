"""Exception types shared across the package."""


class LevelCrossError(Exception):
    """Base class for all package-specific errors."""


class SpecParseError(LevelCrossError, ValueError):
    """A distribution spec string could not be parsed."""


class MomentUndefinedError(LevelCrossError, ValueError):
    """A required moment does not exist for the given parameters."""


class UnsupportedPairError(LevelCrossError, ValueError):
    """No pair-specific closed form is available for this (T, Y) combination."""


class QuadratureError(LevelCrossError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class SeriesTruncationError(LevelCrossError, RuntimeError):
    """A series was truncated before its tail bound was met."""
