"""BTZ background geometry and static-detector kinematics.

Everything is expressed in units of the detector switching width: sigma = 1
sets the time unit, so the public controls are the dimensionless ratios
ell/sigma, Omega*sigma, d/sigma and the coupling lambda_tilde = lambda*sqrt(sigma).
Radial positions are normally derived from proper distances to the horizon
(the control variable used throughout) via ``radius_at_horizon_distance``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError


@dataclass(frozen=True)
class BtzSpacetime:
    """A static BTZ black hole background.

    ell: AdS curvature radius (in units of sigma).
    mass: dimensionless black hole mass M.
    zeta: boundary condition of the field at spatial infinity;
          -1 Neumann, 0 transparent, +1 Dirichlet.
    """

    ell: float
    mass: float
    zeta: int = 1
    r_h: float = field(init=False)

    def __post_init__(self):
        if not (self.ell > 0):
            raise DomainError(f"ell must be positive, got {self.ell}")
        if not (self.mass > 0):
            raise DomainError(f"mass must be positive, got {self.mass}")
        if self.zeta not in (-1, 0, 1):
            raise DomainError(f"zeta must be -1, 0 or 1, got {self.zeta}")
        object.__setattr__(self, "r_h", self.ell * math.sqrt(self.mass))


@dataclass(frozen=True)
class StaticDetector:
    """A pointlike two-level detector held static at radius R.

    Omega is the energy gap (as Omega*sigma), sigma the Gaussian switching
    width (the global time unit, 1 by convention), lambda_tilde the
    dimensionless coupling lambda*sqrt(sigma).
    """

    R: float
    Omega: float
    Phi: float = 0.0
    sigma: float = 1.0
    lambda_tilde: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0):
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        if not math.isfinite(self.Omega):
            raise DomainError(f"Omega must be finite, got {self.Omega}")

    def validate_exterior(self, st: BtzSpacetime) -> None:
        """Raise unless the detector sits strictly outside the horizon."""
        if not (self.R > st.r_h):
            raise DomainError(
                f"static detector requires R > r_h, got R={self.R}, r_h={st.r_h}"
            )


def horizon_radius(ell: float, mass: float) -> float:
    """Horizon radius of a BTZ black hole with AdS radius ell and mass M."""
    if not (ell > 0) or not (mass > 0):
        raise DomainError(f"ell and mass must be positive, got ell={ell}, mass={mass}")
    return ell * math.sqrt(mass)


def _s_factor(st: BtzSpacetime, R: float) -> float:
    # sqrt(R^2 - r_h^2) computed as a product to avoid cancellation near r_h
    return math.sqrt((R - st.r_h) * (R + st.r_h))


def redshift_factor(st: BtzSpacetime, R: float) -> float:
    """d(tau)/dt for a static worldline at radius R; vanishes at the horizon."""
    if R < st.r_h:
        raise DomainError(f"redshift factor needs R >= r_h, got R={R}, r_h={st.r_h}")
    return _s_factor(st, R) / st.ell


def proper_distance(st: BtzSpacetime, R1: float, R2: float) -> float:
    """Radial proper distance between static positions R1 <= R2 at equal angle."""
    if not (st.r_h <= R1 <= R2):
        raise DomainError(
            f"proper_distance needs r_h <= R1 <= R2, got r_h={st.r_h}, R1={R1}, R2={R2}"
        )
    s1 = _s_factor(st, R1)
    s2 = _s_factor(st, R2)
    # log1p form of ell*ln[(R2+s2)/(R1+s1)]: keeps full precision when the two
    # radii are close, where the plain ratio would round to 1.
    denom = R1 + s1
    if s1 + s2 > 0:
        ds = (R2 - R1) * (R2 + R1) / (s1 + s2)  # == s2 - s1, cancellation-free
    else:
        ds = 0.0
    return st.ell * math.log1p(((R2 - R1) + ds) / denom)


def radius_at_horizon_distance(st: BtzSpacetime, d: float) -> float:
    """Radius at proper distance d from the horizon: R = r_h*cosh(d/ell)."""
    if d < 0:
        raise DomainError(f"distance must be non-negative, got {d}")
    return st.r_h * math.cosh(d / st.ell)


def local_temperature(st: BtzSpacetime, R: float) -> float:
    """Redshifted Hawking temperature seen by a static detector at radius R."""
    if not (R > st.r_h):
        raise DomainError(f"local temperature needs R > r_h, got R={R}, r_h={st.r_h}")
    return st.r_h / (2.0 * math.pi * st.ell * _s_factor(st, R))


def detector_at_distance(
    st: BtzSpacetime,
    d: float,
    Omega: float,
    Phi: float = 0.0,
    sigma: float = 1.0,
    lambda_tilde: float = 1.0,
) -> StaticDetector:
    """Build a detector at proper distance d > 0 from the horizon."""
    if not (d > 0):
        raise DomainError(f"detector distance from horizon must be positive, got {d}")
    det = StaticDetector(
        R=radius_at_horizon_distance(st, d),
        Omega=Omega,
        Phi=Phi,
        sigma=sigma,
        lambda_tilde=lambda_tilde,
    )
    det.validate_exterior(st)
    return det
