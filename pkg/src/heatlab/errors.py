"""Exception types shared across the package."""


class HeatlabError(Exception):
    """Base class for all heatlab errors."""


class GeometryError(HeatlabError):
    """Invalid domain construction or geometric query."""


class ConfigurationError(HeatlabError):
    """Incompatible method/shape pairing or invalid estimator options."""


class QuadratureError(HeatlabError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class SpecParseError(HeatlabError):
    """Malformed domain/datum specification text."""
