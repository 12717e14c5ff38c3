"""Two-point function of a conformally coupled massless scalar on BTZ.

The Hartle-Hawking Wightman function is assembled as an image sum over the
AdS3 two-point function; each image contributes two inverse square roots of
the geodesic separation function sigma_n, weighted by the boundary condition
zeta. The boundary value is defined by shifting the first argument's time,
Delta t -> Delta t - i*eps, and taking the principal complex square root.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError
from .geometry import BtzSpacetime

_PREFACTOR = 1.0 / (4.0 * math.pi * math.sqrt(2.0))


@dataclass(frozen=True)
class SpacetimePoint:
    """Schwarzschild-like BTZ coordinates (t, r, phi) of an event."""

    t: float
    r: float
    phi: float


class WightmanValue(NamedTuple):
    value: complex
    tail: float
    n_used: int


def _check_exterior(st: BtzSpacetime, x: SpacetimePoint) -> None:
    if not (x.r > st.r_h):
        raise DomainError(f"Wightman evaluation needs r > r_h, got r={x.r}, r_h={st.r_h}")


def _pair_constants(st: BtzSpacetime, r: float, r2: float) -> tuple[float, float, float]:
    """(s1*s2, q_minus, q_plus) with the differences r*r2 -/+ r_h^2 - s1*s2
    computed cancellation-free (they vanish quadratically at coincidence)."""
    rh = st.r_h
    s1 = math.sqrt((r - rh) * (r + rh))
    s2 = math.sqrt((r2 - rh) * (r2 + rh))
    ss = s1 * s2
    q_minus = rh * rh * (r - r2) ** 2 / (r * r2 - rh * rh + ss)
    q_plus = rh * rh * (r + r2) ** 2 / (r * r2 + rh * rh + ss)
    return ss, q_minus, q_plus


def sigma_n(st: BtzSpacetime, x: SpacetimePoint, x2: SpacetimePoint, n: int) -> float:
    """Geodesic separation function of the n-th image of x2 relative to x.

    Algebraically identical to the textbook cosh difference, but organized so
    nearly coincident points and nearly lightlike lags keep full precision.
    """
    _check_exterior(st, x)
    _check_exterior(st, x2)
    rh = st.r_h
    phi_n = (rh / st.ell) * ((x.phi - x2.phi) - 2.0 * math.pi * n)
    z_t = rh * (x.t - x2.t) / st.ell**2
    ss, q_minus, _ = _pair_constants(st, x.r, x2.r)
    spatial = 2.0 * x.r * x2.r * math.sinh(0.5 * phi_n) ** 2 + q_minus
    temporal = 2.0 * ss * math.sinh(0.5 * z_t) ** 2
    return (spatial - temporal) / rh**2


def _image_term(
    st: BtzSpacetime,
    x: SpacetimePoint,
    x2: SpacetimePoint,
    n: int,
    eps: float,
) -> complex:
    rh = st.r_h
    phi_n = (rh / st.ell) * ((x.phi - x2.phi) - 2.0 * math.pi * n)
    z_t = rh * complex(x.t - x2.t, -eps) / st.ell**2
    ss, q_minus, q_plus = _pair_constants(st, x.r, x2.r)
    spatial = 2.0 * x.r * x2.r * math.sinh(0.5 * phi_n) ** 2
    temporal = 2.0 * ss * cmath.sinh(0.5 * z_t) ** 2
    sig = (spatial + q_minus - temporal) / rh**2
    term = 1.0 / cmath.sqrt(sig)
    if st.zeta != 0:
        sig_plus = (spatial + q_plus - temporal) / rh**2
        term -= st.zeta / cmath.sqrt(sig_plus)
    return term


def wightman_btz(
    st: BtzSpacetime,
    x: SpacetimePoint,
    x2: SpacetimePoint,
    eps: float,
    n_max: int,
    tail_tol: float = 1e-12,
) -> WightmanValue:
    """Truncated image sum for W(x, x2) at regulator eps.

    Images are added symmetrically in n until the last +/-n pair is below
    tail_tol relative to the running sum; the returned tail is a geometric
    bound on the remainder. Raises ConvergenceError (carrying the bound) if
    n_max is exhausted first.
    """
    if not (eps > 0):
        raise DomainError(f"regulator eps must be positive, got {eps}")
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    _check_exterior(st, x)
    _check_exterior(st, x2)

    # asymptotic per-image decay ratio; used to floor the observed ratio and
    # to bound the tail after the n = 0 term alone
    ratio_floor = math.exp(-math.pi * st.r_h / st.ell)

    total = _image_term(st, x, x2, 0, eps)
    prev_pair = abs(total)
    tail = prev_pair * ratio_floor / (1.0 - ratio_floor)
    n_used = 0
    converged = tail <= tail_tol * max(abs(total), 1e-300)
    for n in range(1, n_max + 1):
        if converged:
            break
        pair = _image_term(st, x, x2, n, eps) + _image_term(st, x, x2, -n, eps)
        total += pair
        n_used = n
        ratio = abs(pair) / prev_pair if prev_pair > 0 else 0.0
        ratio = max(ratio, ratio_floor)
        tail = abs(pair) * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
        prev_pair = max(abs(pair), 1e-300)
        converged = tail <= tail_tol * max(abs(total), 1e-300)

    if not converged:
        raise ConvergenceError(
            f"image sum not converged within n_max={n_max} (tail bound {tail:.3e})",
            value=total * (_PREFACTOR / st.ell),
            estimate=tail * _PREFACTOR / st.ell,
        )
    return WightmanValue(total * (_PREFACTOR / st.ell), tail * _PREFACTOR / st.ell, n_used)


def image_sum_on_separations(
    st: BtzSpacetime,
    rA: float,
    rB: float,
    dphi: float,
    dt: np.ndarray,
    n_window: int,
) -> np.ndarray:
    """Vectorized image sum over an array of (complex) coordinate-time lags.

    Service routine for the brute-force response integrals: evaluates
    W(x, x') on two fixed static worldlines for every lag in ``dt`` using the
    fixed symmetric window |n| <= n_window, in the same cancellation-free
    arrangement as ``sigma_n``. The iε handling is the caller's job (pass
    complex lags).
    """
    rh = st.r_h
    ss, q_minus, q_plus = _pair_constants(st, rA, rB)
    temporal = 2.0 * ss * np.sinh(0.5 * rh * np.asarray(dt, dtype=complex) / st.ell**2) ** 2
    total = np.zeros_like(temporal)
    for n in range(-n_window, n_window + 1):
        phi_n = (rh / st.ell) * (dphi - 2.0 * math.pi * n)
        spatial = 2.0 * rA * rB * math.sinh(0.5 * phi_n) ** 2
        total += 1.0 / np.sqrt((spatial + q_minus - temporal) / rh**2)
        if st.zeta != 0:
            total -= st.zeta / np.sqrt((spatial + q_plus - temporal) / rh**2)
    return total * (_PREFACTOR / st.ell)
