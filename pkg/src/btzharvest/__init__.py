"""Entanglement harvesting observables for static Unruh-DeWitt detectors
outside a BTZ black hole: closed-form transition probabilities and nonlocal
term, a brute-force verification route, and sweep/search drivers."""

from .errors import (
    BracketError,
    BtzHarvestError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
)
from .geometry import (
    BtzSpacetime,
    StaticDetector,
    detector_at_distance,
    horizon_radius,
    local_temperature,
    proper_distance,
    radius_at_horizon_distance,
    redshift_factor,
)
from .quadrature import (
    IntegralValue,
    QuadratureSettings,
    SingularKernelSpec,
    singular_cosh_integral,
    thermal_gaussian_integral,
)
from .response import (
    ResponseResult,
    concurrence,
    negativity,
    nonlocal_X,
    respond,
    transition_probability,
)
from .wightman import SpacetimePoint, sigma_n, wightman_btz

__all__ = [
    "BracketError",
    "BtzHarvestError",
    "BtzSpacetime",
    "ConsistencyError",
    "ConvergenceError",
    "DomainError",
    "IntegralValue",
    "QuadratureSettings",
    "ResponseResult",
    "SingularKernelSpec",
    "SpacetimePoint",
    "StaticDetector",
    "concurrence",
    "detector_at_distance",
    "horizon_radius",
    "local_temperature",
    "negativity",
    "nonlocal_X",
    "proper_distance",
    "radius_at_horizon_distance",
    "redshift_factor",
    "respond",
    "sigma_n",
    "singular_cosh_integral",
    "thermal_gaussian_integral",
    "transition_probability",
    "wightman_btz",
]

__version__ = "0.1.0"
