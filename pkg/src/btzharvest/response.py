"""Closed-form detector observables: transition probabilities, the nonlocal
term X, and the derived entanglement measures.

The transition probability of a static detector splits into a Fermi-Dirac
thermal integral (which captures the n = 0 direct piece analytically) plus a
boundary term and an image sum of singular oscillatory integrals; X is a
two-sided image sum of cosine-type integrals. All coefficients here are
stored per unit coupling (lambda_tilde = 1); the physical coupling enters
once, at result assembly in ``respond``.

The image sum for the probability must start its minus-branch at n = 1:
alpha_minus(0) = 0 marks the direct piece already accounted for by the
thermal integral, and including it again is a double count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConsistencyError, ConvergenceError, DomainError
from .geometry import BtzSpacetime, StaticDetector, redshift_factor
from .quadrature import (
    IntegralValue,
    QuadratureSettings,
    SingularKernelSpec,
    singular_cosh_integral,
    thermal_gaussian_integral,
)

# Branch of sqrt(cosh(alpha) - cosh(y)) for y > alpha in the X integrals.
# Time ordering flips the regulator relative to the probability integrals, so
# X uses the conjugate (+i) branch; validated against the brute-force route.
X_BRANCH = +1.0


def _arccosh1p(x: float) -> float:
    """arccosh(1 + x) for x >= 0, accurate for small x."""
    if x < 0:
        if x > -1e-12:  # guard tiny negative rounding
            return 0.0
        raise DomainError(f"arccosh argument below 1 by {x}")
    return math.log1p(x + math.sqrt(x * (x + 2.0)))


def _sinh_half_sq(z: float) -> float:
    """sinh(z/2)^2 with overflow guard for large arguments."""
    if abs(z) > 700.0:
        # sinh(z/2)^2 ~ exp(|z|)/4; only used inside ratios that have long
        # since converged, so a saturated huge value is fine
        return math.inf
    s = math.sinh(0.5 * z)
    return s * s


@dataclass(frozen=True)
class DetectorCoefficients:
    """Single-detector coefficients of the closed form, per unit coupling."""

    kappa: float
    K: float
    T: float
    a: float
    beta: float
    R: float
    r_h: float
    theta: float  # 2*pi*r_h/ell, the per-image angle increment
    s2: float  # R^2 - r_h^2

    def alpha_minus(self, n: int) -> float:
        if n == 0:
            return 0.0
        x = 2.0 * self.R**2 * _sinh_half_sq(self.theta * n) / self.s2
        return _arccosh1p(x)

    def alpha_plus(self, n: int) -> float:
        x = (2.0 * self.R**2 * _sinh_half_sq(self.theta * n) + 2.0 * self.r_h**2) / self.s2
        return _arccosh1p(x)


def detector_coefficients(st: BtzSpacetime, det: StaticDetector) -> DetectorCoefficients:
    det.validate_exterior(st)
    gamma = redshift_factor(st, det.R)
    sigma = det.sigma
    # per unit coupling: lambda^2 = lambda_tilde^2/sigma with lambda_tilde = 1
    lam_sq = 1.0 / sigma
    s2 = (det.R - st.r_h) * (det.R + st.r_h)
    return DetectorCoefficients(
        kappa=lam_sq * sigma**2 / 2.0,
        K=lam_sq * sigma / (2.0 * math.sqrt(2.0 * math.pi)),
        T=st.r_h / (2.0 * math.pi * st.ell * math.sqrt(s2)),
        a=gamma**2 * st.ell**4 / (4.0 * sigma**2 * st.r_h**2),
        beta=gamma * det.Omega * st.ell**2 / st.r_h,
        R=det.R,
        r_h=st.r_h,
        theta=2.0 * math.pi * st.r_h / st.ell,
        s2=s2,
    )


@dataclass(frozen=True)
class PairCoefficients:
    """Two-detector coefficients of the closed form for X, per unit coupling."""

    K_X: float
    a_X: float
    beta_X: float
    RA: float
    RB: float
    r_h: float
    sAsB: float  # ell^2 * gamma_A * gamma_B
    dphi: float
    theta: float  # r_h/ell, multiplies (dphi + 2*pi*n)
    q_minus: float  # R_A R_B - r_h^2 - sA sB, cancellation-free
    q_plus: float  # R_A R_B + r_h^2 - sA sB, cancellation-free

    def alpha_minus(self, n: int) -> float:
        phi_n = self.theta * (self.dphi + 2.0 * math.pi * n)
        x = (2.0 * self.RA * self.RB * _sinh_half_sq(phi_n) + self.q_minus) / self.sAsB
        return _arccosh1p(x)

    def alpha_plus(self, n: int) -> float:
        phi_n = self.theta * (self.dphi + 2.0 * math.pi * n)
        x = (2.0 * self.RA * self.RB * _sinh_half_sq(phi_n) + self.q_plus) / self.sAsB
        return _arccosh1p(x)


def pair_coefficients(
    st: BtzSpacetime, detA: StaticDetector, detB: StaticDetector
) -> PairCoefficients:
    detA.validate_exterior(st)
    detB.validate_exterior(st)
    if detA.Omega != detB.Omega:
        raise DomainError(
            "the closed form for X assumes equal energy gaps; "
            f"got {detA.Omega} and {detB.Omega}"
        )
    if detA.sigma != detB.sigma:
        raise DomainError("the closed form for X assumes equal switching widths")
    sigma = detA.sigma
    Omega = detA.Omega
    gA = redshift_factor(st, detA.R)
    gB = redshift_factor(st, detB.R)
    g2 = gA * gA + gB * gB
    lam_sq = 1.0 / sigma
    K_X = (
        lam_sq
        * sigma
        / (2.0 * math.sqrt(math.pi))
        * math.sqrt(gA * gB / g2)
        * math.exp(-0.5 * sigma**2 * Omega**2 * (gA + gB) ** 2 / g2)
    )
    RA, RB, rh = detA.R, detB.R, st.r_h
    sAsB = st.ell**2 * gA * gB
    prod_minus = RA * RB - rh * rh
    # (R_A R_B -/+ r_h^2)^2 - (sA sB)^2 = r_h^2 (R_A -/+ R_B)^2, so both
    # differences below stay accurate when the detectors nearly coincide
    q_minus = rh * rh * (RA - RB) ** 2 / (prod_minus + sAsB)
    q_plus = rh * rh * (RA + RB) ** 2 / (RA * RB + rh * rh + sAsB)
    return PairCoefficients(
        K_X=K_X,
        a_X=gA**2 * gB**2 * st.ell**4 / (2.0 * sigma**2 * g2 * st.r_h**2),
        beta_X=Omega * gA * gB * (gA - gB) / g2 * st.ell**2 / st.r_h,
        RA=RA,
        RB=RB,
        r_h=rh,
        sAsB=sAsB,
        dphi=detA.Phi - detB.Phi,
        theta=st.r_h / st.ell,
        q_minus=q_minus,
        q_plus=q_plus,
    )


class ResponseTerm(NamedTuple):
    value: float
    error: float
    n_terms: int


class ComplexTerm(NamedTuple):
    value: complex
    error: float
    n_terms: int


def _p_image(coeffs: DetectorCoefficients, alpha: float, settings: QuadratureSettings) -> IntegralValue:
    spec = SingularKernelSpec(a=coeffs.a, beta=coeffs.beta, alpha=alpha, phase_mode="complex_exp")
    return singular_cosh_integral(spec, settings, branch_sign=-1.0)


def transition_probability(
    st: BtzSpacetime, det: StaticDetector, settings: QuadratureSettings | None = None
) -> ResponseTerm:
    """Excitation probability of one static detector, per lambda_tilde^2.

    Thermal term + zeta-weighted n = 0 boundary term + doubled n >= 1 image
    terms, truncated once an image pair falls below tail_tol relative to the
    running total.
    """
    settings = settings or QuadratureSettings()
    c = detector_coefficients(st, det)

    total = c.kappa * thermal_gaussian_integral(det.sigma, det.Omega, c.T, settings)
    err = settings.abs_tol + settings.rel_tol * abs(total)

    if st.zeta != 0:
        boundary = _p_image(c, c.alpha_plus(0), settings)
        total -= st.zeta * c.K * boundary.value.real
        err += c.K * boundary.error

    n_used = 0
    converged = False
    for n in range(1, settings.n_max_images + 1):
        direct = _p_image(c, c.alpha_minus(n), settings)
        pair = c.K * direct.value.real
        err += c.K * direct.error
        if st.zeta != 0:
            image = _p_image(c, c.alpha_plus(n), settings)
            pair -= st.zeta * c.K * image.value.real
            err += c.K * image.error
        total += 2.0 * pair
        n_used = n
        if abs(2.0 * pair) <= settings.tail_tol * max(abs(total), 1e-300):
            converged = True
            break
    if not converged:
        raise ConvergenceError(
            f"P image sum not converged within n_max_images={settings.n_max_images}",
            value=total,
            estimate=err,
        )
    if total < -settings.abs_tol:
        raise ConsistencyError(
            f"transition probability {total} below -abs_tol: numerical inconsistency"
        )
    return ResponseTerm(total, err, n_used)


def _x_image(coeffs: PairCoefficients, alpha: float, settings: QuadratureSettings) -> IntegralValue:
    spec = SingularKernelSpec(a=coeffs.a_X, beta=coeffs.beta_X, alpha=alpha, phase_mode="cosine")
    return singular_cosh_integral(spec, settings, branch_sign=X_BRANCH)


def nonlocal_X(
    st: BtzSpacetime,
    detA: StaticDetector,
    detB: StaticDetector,
    settings: QuadratureSettings | None = None,
) -> ComplexTerm:
    """Nonlocal density-matrix element X, per lambda_tilde^2.

    Two-sided image sum, n = 0 first and then symmetric +/-n pairs until the
    pair contribution is below tail_tol relative. Coincident detectors are a
    domain error: the leading-order X diverges logarithmically there.
    """
    settings = settings or QuadratureSettings()
    pc = pair_coefficients(st, detA, detB)
    zeta = st.zeta

    def term(n: int) -> tuple[complex, float]:
        alpha_m = pc.alpha_minus(n)
        if alpha_m == 0.0:
            raise DomainError(
                "coincident detector worldlines: X is logarithmically divergent "
                "at leading order (alpha_minus(0) = 0)"
            )
        direct = _x_image(pc, alpha_m, settings)
        val = pc.K_X * direct.value
        e = pc.K_X * direct.error
        if zeta != 0:
            image = _x_image(pc, pc.alpha_plus(n), settings)
            val -= zeta * pc.K_X * image.value
            e += pc.K_X * image.error
        return val, e

    acc, err = term(0)
    n_used = 0
    converged = False
    for k in range(1, settings.n_max_images + 1):
        t_plus, e_plus = term(k)
        t_minus, e_minus = term(-k)
        acc += t_plus + t_minus
        err += e_plus + e_minus
        n_used = k
        if abs(t_plus) + abs(t_minus) <= settings.tail_tol * max(abs(acc), 1e-300):
            converged = True
            break
    if not converged:
        raise ConvergenceError(
            f"X image sum not converged within n_max_images={settings.n_max_images}",
            value=-acc,
            estimate=err,
        )
    return ComplexTerm(-acc, err, n_used)


def concurrence(P_A: float, P_B: float, X: complex) -> float:
    """Leading-order concurrence of the two-detector state."""
    if P_A < 0 or P_B < 0:
        raise DomainError(f"probabilities must be non-negative, got {P_A}, {P_B}")
    return 2.0 * max(0.0, abs(X) - math.sqrt(P_A * P_B))


def negativity(P_A: float, P_B: float, X: complex) -> float:
    """Leading-order negativity of the two-detector state."""
    if P_A < 0 or P_B < 0:
        raise DomainError(f"probabilities must be non-negative, got {P_A}, {P_B}")
    return max(0.0, math.hypot(abs(X), 0.5 * (P_A - P_B)) - 0.5 * (P_A + P_B))


@dataclass(frozen=True)
class ResponseResult:
    """One full evaluation of the pair observables, physical normalization."""

    P_A: float
    P_B: float
    X: complex
    concurrence: float
    negativity: float
    n_terms_used: int
    est_error: float


def _with_context(label: str, exc: Exception) -> Exception:
    if isinstance(exc, ConvergenceError):
        return ConvergenceError(f"{label}: {exc}", value=exc.value, estimate=exc.estimate)
    return type(exc)(f"{label}: {exc}")


def respond(
    st: BtzSpacetime,
    detA: StaticDetector,
    detB: StaticDetector,
    settings: QuadratureSettings | None = None,
) -> ResponseResult:
    """Assemble P_A, P_B, X and the entanglement measures for a detector pair.

    Internal evaluation is per unit coupling; the detectors' lambda_tilde
    enter exactly once here, so all observables scale exactly as the coupling
    squared.
    """
    settings = settings or QuadratureSettings()
    try:
        pA = transition_probability(st, detA, settings)
    except (ConvergenceError, ConsistencyError, DomainError) as exc:
        raise _with_context("P_A", exc) from exc
    try:
        pB = transition_probability(st, detB, settings)
    except (ConvergenceError, ConsistencyError, DomainError) as exc:
        raise _with_context("P_B", exc) from exc
    try:
        x = nonlocal_X(st, detA, detB, settings)
    except (ConvergenceError, ConsistencyError, DomainError) as exc:
        raise _with_context("X", exc) from exc

    cA = detA.lambda_tilde**2
    cB = detB.lambda_tilde**2
    cX = detA.lambda_tilde * detB.lambda_tilde
    P_A = pA.value * cA
    P_B = pB.value * cB
    X = x.value * cX
    return ResponseResult(
        P_A=P_A,
        P_B=P_B,
        X=X,
        concurrence=concurrence(P_A, P_B, X),
        negativity=negativity(P_A, P_B, X),
        n_terms_used=max(pA.n_terms, pB.n_terms, x.n_terms),
        est_error=pA.error * cA + pB.error * cB + x.error * cX,
    )
