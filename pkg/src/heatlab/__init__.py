"""heatlab: heat content of explicit Euclidean and circle domains.

Computes the temperature u(x;t) and heat content H(t) of balls, annuli,
boxes, disjoint unions and circle arcs by independent methods (closed forms,
nested radial-angular quadrature, Monte Carlo with common random numbers,
circle eigensums), and machine-verifies the monotonicity/convexity theorems
and proof constants for these configurations at desk scale.
"""

from ._backend import backend_name
from .calculus import ScanReport, dH, richardson_derivative, scan
from .errors import (
    ConfigurationError,
    GeometryError,
    HeatlabError,
    QuadratureError,
    SpecParseError,
)
from .geometry import (
    AmbientSpace,
    Annulus,
    Arc,
    Ball,
    Box,
    DisjointUnion,
    Domain,
    contains,
    diameter,
    domain_from_dict,
    measure,
    sample_uniform,
    unit_ball_volume,
)
from .heat_content import (
    CircleSpectrum,
    ConstantOne,
    Curve,
    Estimate,
    IndicatorOf,
    InitialDatum,
    RadialPower,
    heat_content,
    heat_content_circle,
    heat_content_curve,
    heat_loss,
    heat_loss_curve,
    temperature,
    two_ball_temperature_dt,
)
from .kernels import (
    KernelEval,
    circle_kernel,
    heat_kernel,
    heat_kernel_time_derivative,
    log_heat_kernel,
    neumann_halfspace_kernel,
)
from .theorems import (
    CmThreshold,
    VerificationReport,
    cm_threshold,
    thm5_constant,
    verify_thm1,
    verify_thm2,
    verify_thm3,
    verify_thm4,
    verify_thm5,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientSpace",
    "Annulus",
    "Arc",
    "Ball",
    "Box",
    "CircleSpectrum",
    "CmThreshold",
    "ConfigurationError",
    "ConstantOne",
    "Curve",
    "DisjointUnion",
    "Domain",
    "Estimate",
    "GeometryError",
    "HeatlabError",
    "IndicatorOf",
    "InitialDatum",
    "KernelEval",
    "QuadratureError",
    "RadialPower",
    "ScanReport",
    "SpecParseError",
    "VerificationReport",
    "backend_name",
    "circle_kernel",
    "cm_threshold",
    "contains",
    "dH",
    "diameter",
    "domain_from_dict",
    "heat_content",
    "heat_content_circle",
    "heat_content_curve",
    "heat_kernel",
    "heat_kernel_time_derivative",
    "heat_loss",
    "heat_loss_curve",
    "log_heat_kernel",
    "measure",
    "neumann_halfspace_kernel",
    "richardson_derivative",
    "sample_uniform",
    "scan",
    "temperature",
    "thm5_constant",
    "two_ball_temperature_dt",
    "unit_ball_volume",
    "verify_thm1",
    "verify_thm2",
    "verify_thm3",
    "verify_thm4",
    "verify_thm5",
]
