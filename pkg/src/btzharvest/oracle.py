"""Brute-force evaluation of the response integrals by direct double-time
quadrature against the regulated image-sum Wightman function.

This module is the ground truth for the closed forms in ``response``: it
never touches the singular-kernel machinery in ``quadrature``. The double
integral over the two coordinate times runs in rotated variables
w = t - t', v = t + t' (the Wightman function on static worldlines depends
on w only): the v integral is a smooth Gaussian handled by fixed-order
Gauss-Legendre, the w integral is adaptive with breakpoints at the image
light-crossing lags, and the finite-regulator values are extrapolated to
eps -> 0 with an exact polynomial fit (the integrals are analytic in eps).

Regulators are specified in units of sigma/gamma_ref, i.e. as proper-time
fractions of the switching width translated to coordinate time, so the same
settings work from the near-horizon to the far-field regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad

from .errors import ConsistencyError, ConvergenceError, DomainError
from .geometry import BtzSpacetime, StaticDetector, redshift_factor
from .wightman import image_sum_on_separations


@dataclass(frozen=True)
class OracleSettings:
    """Controls for the brute-force route.

    eps_values: regulator ladder in units of sigma/gamma_ref, decreasing.
    t_window: half-width of the Gaussian-support box in switching widths.
    """

    eps_values: tuple[float, ...] = (0.1, 0.05, 0.025, 0.0125)
    t_window: float = 7.0
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    gl_nodes: int = 96
    panel_limit: int = 512
    tail_tol: float = 1e-12

    def __post_init__(self):
        eps = tuple(self.eps_values)
        if len(eps) < 2:
            raise DomainError("need at least two regulator values to extrapolate")
        if any(e <= 0 for e in eps):
            raise DomainError("regulators must be positive")
        if any(a <= b for a, b in zip(eps, eps[1:])):
            raise DomainError("regulators must be strictly decreasing")
        if self.t_window < 7.0:
            raise DomainError("t_window below 7 truncates the Gaussian tails")


class OracleValue(NamedTuple):
    value: complex
    residual: float
    quad_error: float


def extrapolate_to_zero(eps: np.ndarray, values: np.ndarray) -> tuple[complex, float]:
    """Exact polynomial fit through (eps, value) pairs, evaluated at eps = 0.

    Returns the extrapolated value and a residual estimate obtained by
    dropping the largest regulator and refitting.
    """
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values, dtype=complex)
    vander = np.vander(eps, increasing=True)
    full = np.linalg.solve(vander, values)[0]
    if len(eps) >= 3:
        sub = np.linalg.solve(np.vander(eps[1:], increasing=True), values[1:])[0]
        residual = abs(full - sub)
    else:
        residual = abs(full - values[-1])
    return complex(full), float(residual)


def _image_window(st: BtzSpacetime, tail_tol: float) -> int:
    # per-image suppression is exp(-pi*n*r_h/ell)
    n = math.ceil(math.log(1.0 / tail_tol) / (math.pi * st.r_h / st.ell)) + 3
    return min(n, 200)


def _singular_lags(st: BtzSpacetime, rA: float, rB: float, dphi: float, n_window: int) -> list[float]:
    """Coordinate-time lags where an image term of sigma_n or sigma_n + 2
    crosses zero (the light-crossing times of the image geodesics)."""
    rh = st.r_h
    sA = math.sqrt((rA - rh) * (rA + rh))
    sB = math.sqrt((rB - rh) * (rB + rh))
    lags = []
    for n in range(-n_window, n_window + 1):
        spatial = (rA * rB / rh**2) * math.cosh((rh / st.ell) * (dphi - 2.0 * math.pi * n))
        for shift in (1.0, -1.0) if st.zeta != 0 else (1.0,):
            # sigma_n = 0 needs cosh(rh*w/ell^2) = (spatial - 1)*rh^2/(sA*sB);
            # the shifted root handles sigma_n + 2 = 0
            c = (spatial - shift) * rh**2 / (sA * sB)
            if c >= 1.0:
                lags.append(st.ell**2 / rh * math.acosh(c))
    return sorted(set(lags))


class _CachedIntegrand:
    """Memoizes a complex-valued integrand so the separate real and imaginary
    adaptive passes reuse every kernel evaluation."""

    def __init__(self, f: Callable[[float], complex]):
        self._f = f
        self._cache: dict[float, complex] = {}

    def __call__(self, w: float) -> complex:
        hit = self._cache.get(w)
        if hit is None:
            hit = self._f(w)
            self._cache[w] = hit
        return hit


def _quad_complex(
    f: Callable[[float], complex],
    lo: float,
    hi: float,
    settings: OracleSettings,
    points: list[float],
) -> tuple[complex, float]:
    if hi <= lo:
        return 0.0 + 0.0j, 0.0
    cached = _CachedIntegrand(f)
    pts = [p for p in points if lo < p < hi] or None
    parts = []
    err = 0.0
    for pick in ((lambda w: cached(w).real), (lambda w: cached(w).imag)):
        out = quad(
            pick,
            lo,
            hi,
            epsabs=settings.abs_tol,
            epsrel=settings.rel_tol,
            limit=settings.panel_limit,
            points=pts,
            full_output=1,
        )
        if len(out) != 3:
            raise ConvergenceError(
                f"oracle outer quadrature failed on [{lo}, {hi}]: {out[3]}",
                value=out[0],
                estimate=out[1],
            )
        parts.append(out[0])
        err += out[1]
    return complex(parts[0], parts[1]), err


def _double_time_integral(
    st: BtzSpacetime,
    rA: float,
    rB: float,
    dphi: float,
    gA: float,
    gB: float,
    sigma: float,
    freq_w: float,
    freq_v: float,
    eps: float,
    settings: OracleSettings,
    time_ordered: bool,
    center_shift: float = 0.0,
) -> tuple[complex, float]:
    """J = int dt dt' chi_A chi_B exp(-i(freq_w*w + freq_v*v)) W(...),
    in rotated coordinates (w, v) including the 1/2 Jacobian.

    time_ordered selects the Heaviside-split kernel of X (later point first);
    otherwise the kernel is W(x_A(t), x_B(t')) on the whole plane.
    """
    g2 = gA * gA + gB * gB
    s_v = 2.0 * sigma / math.sqrt(g2)
    s_w = sigma * math.sqrt(g2) / (gA * gB)
    half_v = settings.t_window * math.sqrt(2.0) * s_v
    nodes, weights = np.polynomial.legendre.leggauss(settings.gl_nodes)

    n_window = _image_window(st, settings.tail_tol)
    lags = _singular_lags(st, rA, rB, dphi, n_window)
    w_cap = 12.0 * s_w
    relevant = [u for u in lags if u <= w_cap]
    w_max = max([settings.t_window * math.sqrt(2.0) * s_w] + [u + 2.0 * s_w for u in relevant])
    points = [u for u in lags if u < w_max]
    points = sorted({p for p in points} | {-p for p in points})

    coef_vv = g2 / (8.0 * sigma * sigma)
    coef_vw = (gA * gA - gB * gB) / (4.0 * sigma * sigma)
    coef_ww = g2 / (8.0 * sigma * sigma)
    v_center_slope = -(gA * gA - gB * gB) / g2

    def inner(w: float) -> complex:
        v_c = v_center_slope * w + 2.0 * center_shift
        v = v_c + half_v * nodes
        expo = -(coef_vv * v * v + coef_vw * v * w + coef_ww * w * w)
        vals = np.exp(expo) * np.exp(-1j * freq_v * v)
        return complex(half_v * np.dot(weights, vals))

    def kernel(w: float) -> complex:
        if time_ordered and w > 0:
            # t > t': later argument is x_B(t'), ordering W(x_B, x_A)
            lag = np.array([-w - 1j * eps])
            return complex(image_sum_on_separations(st, rB, rA, -dphi, lag, n_window)[0])
        lag = np.array([w - 1j * eps])
        return complex(image_sum_on_separations(st, rA, rB, dphi, lag, n_window)[0])

    def integrand(w: float) -> complex:
        return inner(w) * complex(math.cos(freq_w * w), -math.sin(freq_w * w)) * kernel(w)

    left, err_l = _quad_complex(integrand, -w_max, 0.0, settings, points)
    right, err_r = _quad_complex(integrand, 0.0, w_max, settings, points)
    return 0.5 * (left + right), err_l + err_r


def oracle_P(
    st: BtzSpacetime,
    det: StaticDetector,
    settings: OracleSettings | None = None,
    center_shift: float = 0.0,
) -> OracleValue:
    """Transition probability per lambda_tilde^2 by direct double quadrature.

    The imaginary part must vanish after extrapolation; a residual above
    tolerance raises ConsistencyError.
    """
    settings = settings or OracleSettings()
    det.validate_exterior(st)
    g = redshift_factor(st, det.R)
    sigma = det.sigma
    scale = sigma / g
    vals = []
    quad_err = 0.0
    for e in settings.eps_values:
        J, qe = _double_time_integral(
            st, det.R, det.R, 0.0, g, g, sigma,
            freq_w=det.Omega * g, freq_v=0.0,
            eps=e * scale, settings=settings, time_ordered=False,
            center_shift=center_shift,
        )
        vals.append(g * g / sigma * J)
        quad_err += qe * g * g / sigma
    value, residual = extrapolate_to_zero(np.array(settings.eps_values) * scale, np.array(vals))
    tol = max(1e-6 * abs(value.real), 100.0 * quad_err, 1e-12)
    if abs(value.imag) > tol:
        raise ConsistencyError(
            f"oracle P has non-vanishing imaginary part {value.imag} (tolerance {tol})"
        )
    return OracleValue(value.real, residual, quad_err)


def oracle_X(
    st: BtzSpacetime,
    detA: StaticDetector,
    detB: StaticDetector,
    settings: OracleSettings | None = None,
) -> OracleValue:
    """Nonlocal term X per lambda_tilde^2 by direct double quadrature with the
    Heaviside ordering split along t = t'."""
    settings = settings or OracleSettings()
    detA.validate_exterior(st)
    detB.validate_exterior(st)
    if detA.sigma != detB.sigma:
        raise DomainError("oracle_X assumes equal switching widths")
    gA = redshift_factor(st, detA.R)
    gB = redshift_factor(st, detB.R)
    sigma = detA.sigma
    scale = sigma / math.sqrt(gA * gB)
    dphi = detA.Phi - detB.Phi
    freq_w = 0.5 * (detA.Omega * gA - detB.Omega * gB)
    freq_v = 0.5 * (detA.Omega * gA + detB.Omega * gB)
    vals = []
    quad_err = 0.0
    for e in settings.eps_values:
        J, qe = _double_time_integral(
            st, detA.R, detB.R, dphi, gA, gB, sigma,
            freq_w=freq_w, freq_v=freq_v,
            eps=e * scale, settings=settings, time_ordered=True,
        )
        vals.append(-gA * gB / sigma * J)
        quad_err += qe * gA * gB / sigma
    value, residual = extrapolate_to_zero(np.array(settings.eps_values) * scale, np.array(vals))
    return OracleValue(value, residual, quad_err)


def oracle_C(
    st: BtzSpacetime,
    detA: StaticDetector,
    detB: StaticDetector,
    settings: OracleSettings | None = None,
) -> OracleValue:
    """The C matrix element per lambda_tilde^2 (plain, non-time-ordered).

    Supports unequal energy gaps; this is the only route to C.
    """
    settings = settings or OracleSettings()
    detA.validate_exterior(st)
    detB.validate_exterior(st)
    if detA.sigma != detB.sigma:
        raise DomainError("oracle_C assumes equal switching widths")
    gA = redshift_factor(st, detA.R)
    gB = redshift_factor(st, detB.R)
    sigma = detA.sigma
    scale = sigma / math.sqrt(gA * gB)
    dphi = detA.Phi - detB.Phi
    freq_w = 0.5 * (detA.Omega * gA + detB.Omega * gB)
    freq_v = 0.5 * (detA.Omega * gA - detB.Omega * gB)
    vals = []
    quad_err = 0.0
    for e in settings.eps_values:
        J, qe = _double_time_integral(
            st, detA.R, detB.R, dphi, gA, gB, sigma,
            freq_w=freq_w, freq_v=freq_v,
            eps=e * scale, settings=settings, time_ordered=False,
        )
        vals.append(gA * gB / sigma * J)
        quad_err += qe * gA * gB / sigma
    value, residual = extrapolate_to_zero(np.array(settings.eps_values) * scale, np.array(vals))
    return OracleValue(value, residual, quad_err)


def oracle_X_triangles(
    st: BtzSpacetime,
    detA: StaticDetector,
    detB: StaticDetector,
    eps: float,
    settings: OracleSettings | None = None,
) -> complex:
    """Diagnostic cross-check: the same X integrand at fixed regulator, done
    as two explicit triangular integrals in the raw (t, t') orientation.

    Quadratic cost; used to validate the rotated-coordinate decomposition.
    """
    settings = settings or OracleSettings()
    gA = redshift_factor(st, detA.R)
    gB = redshift_factor(st, detB.R)
    sigma = detA.sigma
    dphi = detA.Phi - detB.Phi
    n_window = _image_window(st, settings.tail_tol)
    lags = _singular_lags(st, detA.R, detB.R, dphi, n_window)
    T = settings.t_window * 1.5 * sigma * max(1.0 / gA, 1.0 / gB)

    def chi_phase(t: float, tp: float) -> complex:
        expo = -(gA * gA * t * t + gB * gB * tp * tp) / (2.0 * sigma * sigma)
        ph = -(detA.Omega * gA * t + detB.Omega * gB * tp)
        return math.exp(expo) * complex(math.cos(ph), math.sin(ph))

    def w_later_B(t: float, tp: float) -> complex:
        lag = np.array([(t - tp) - 1j * eps])
        return complex(image_sum_on_separations(st, detA.R, detB.R, dphi, lag, n_window)[0])

    def w_later_A(t: float, tp: float) -> complex:
        lag = np.array([(tp - t) - 1j * eps])
        return complex(image_sum_on_separations(st, detB.R, detA.R, -dphi, lag, n_window)[0])

    def inner(t: float, lo: float, hi: float, w_fn) -> complex:
        pts = sorted({t + u for u in lags} | {t - u for u in lags})
        pts = [p for p in pts if lo < p < hi] or None
        fn = _CachedIntegrand(lambda tp: chi_phase(t, tp) * w_fn(t, tp))
        re = quad(lambda tp: fn(tp).real, lo, hi,
                  epsabs=1e-11, epsrel=1e-7, limit=settings.panel_limit, points=pts)[0]
        im = quad(lambda tp: fn(tp).imag, lo, hi,
                  epsabs=1e-11, epsrel=1e-7, limit=settings.panel_limit, points=pts)[0]
        return complex(re, im)

    def outer(part) -> float:
        return quad(part, -T, T, epsabs=1e-11, epsrel=1e-7, limit=settings.panel_limit)[0]

    both_triangles = _CachedIntegrand(
        lambda t: inner(t, t, T, w_later_B) + inner(t, -T, t, w_later_A)
    )
    total = complex(outer(lambda t: both_triangles(t).real),
                    outer(lambda t: both_triangles(t).imag))
    return -gA * gB / sigma * total
