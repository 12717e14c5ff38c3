"""Declarative parameter sweeps, sudden-death bisection and gap optimization.

A sweep is a fixed parameter map plus one axis; every grid point is evaluated
independently and emitted as a flat row, so long runs never lose completed
work to a single bad point. Control variables are proper distances from the
horizon (dA) and between the detectors (dAB), converted to radii at the
boundary. Output rows are deterministic in axis order.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field, fields
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import (
    BracketError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
)
from .geometry import BtzSpacetime, StaticDetector, detector_at_distance
from .quadrature import QuadratureSettings
from .response import ResponseResult, respond

PARAM_KEYS = (
    "l_over_sigma",
    "mass",
    "zeta",
    "gap_sigma",
    "dA_over_sigma",
    "dAB_over_sigma",
    "delta_phi",
    "lambda_tilde",
)

DEFAULT_PARAMS: dict[str, float] = {
    "l_over_sigma": 10.0,
    "mass": 1.0,
    "zeta": 1,
    "gap_sigma": 0.1,
    "dA_over_sigma": 1.0,
    "dAB_over_sigma": 1.0,
    "delta_phi": 0.0,
    "lambda_tilde": 1.0,
}

# zeta is discrete and delta_phi enters only through detector placement;
# every other parameter may serve as a sweep axis
AXIS_KEYS = tuple(k for k in PARAM_KEYS if k != "zeta")


@dataclass(frozen=True)
class AxisSpec:
    name: str
    scale: str
    min: float
    max: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_KEYS:
            raise DomainError(f"axis name must be one of {AXIS_KEYS}, got {self.name!r}")
        if self.scale not in ("linear", "log"):
            raise DomainError(f"axis scale must be 'linear' or 'log', got {self.scale!r}")
        if self.count < 2:
            raise DomainError(f"axis count must be >= 2, got {self.count}")
        if not (self.min < self.max):
            raise DomainError(f"axis needs min < max, got [{self.min}, {self.max}]")
        if self.scale == "log" and self.min <= 0:
            raise DomainError("log axis needs min > 0")

    def values(self) -> list[float]:
        if self.scale == "log":
            return [float(v) for v in np.geomspace(self.min, self.max, self.count)]
        return [float(v) for v in np.linspace(self.min, self.max, self.count)]


def _validated_params(raw: Mapping[str, float]) -> dict[str, float]:
    unknown = set(raw) - set(PARAM_KEYS)
    if unknown:
        raise DomainError(f"unknown parameters: {sorted(unknown)}")
    params = dict(DEFAULT_PARAMS)
    params.update(raw)
    if params["l_over_sigma"] <= 0:
        raise DomainError("l_over_sigma must be positive")
    if params["mass"] <= 0:
        raise DomainError("mass must be positive")
    if int(params["zeta"]) not in (-1, 0, 1):
        raise DomainError("zeta must be -1, 0 or 1")
    if params["dA_over_sigma"] < 0:
        raise DomainError("dA_over_sigma must be non-negative")
    if params["dAB_over_sigma"] < 0:
        raise DomainError("dAB_over_sigma must be non-negative")
    if params["lambda_tilde"] < 0:
        raise DomainError("lambda_tilde must be non-negative")
    return params


@dataclass(frozen=True)
class SweepSpec:
    fixed: Mapping[str, float]
    axis: AxisSpec
    quad: QuadratureSettings = field(default_factory=QuadratureSettings)

    def __post_init__(self):
        if self.axis.name in self.fixed:
            raise DomainError(
                f"axis parameter {self.axis.name!r} must not also be fixed"
            )
        _validated_params(self.fixed)


@dataclass
class SweepRow:
    l_over_sigma: float
    mass: float
    zeta: int
    gap_sigma: float
    dA_over_sigma: float
    dAB_over_sigma: float
    delta_phi: float
    lambda_tilde: float
    P_A: float
    P_B: float
    re_X: float
    im_X: float
    abs_X: float
    concurrence: float
    negativity: float
    n_terms_used: int
    est_error: float
    status: str


ROW_FIELDS = tuple(f.name for f in fields(SweepRow))


def build_point(params: Mapping[str, float]) -> tuple[BtzSpacetime, StaticDetector, StaticDetector]:
    """Spacetime and detector pair from a flat parameter map."""
    p = _validated_params(params)
    st = BtzSpacetime(ell=p["l_over_sigma"], mass=p["mass"], zeta=int(p["zeta"]))
    detA = detector_at_distance(
        st, p["dA_over_sigma"], Omega=p["gap_sigma"], lambda_tilde=p["lambda_tilde"]
    )
    detB = detector_at_distance(
        st,
        p["dA_over_sigma"] + p["dAB_over_sigma"],
        Omega=p["gap_sigma"],
        Phi=p["delta_phi"],
        lambda_tilde=p["lambda_tilde"],
    )
    return st, detA, detB


def _error_code(exc: Exception) -> str:
    if isinstance(exc, DomainError):
        return "error:domain"
    if isinstance(exc, ConvergenceError):
        return "error:convergence"
    if isinstance(exc, ConsistencyError):
        return "error:consistency"
    return "error:internal"


def evaluate_point(params: Mapping[str, float], quad: QuadratureSettings) -> SweepRow:
    p = _validated_params(params)
    base = dict(
        l_over_sigma=p["l_over_sigma"],
        mass=p["mass"],
        zeta=int(p["zeta"]),
        gap_sigma=p["gap_sigma"],
        dA_over_sigma=p["dA_over_sigma"],
        dAB_over_sigma=p["dAB_over_sigma"],
        delta_phi=p["delta_phi"],
        lambda_tilde=p["lambda_tilde"],
    )
    try:
        st, detA, detB = build_point(p)
        r: ResponseResult = respond(st, detA, detB, quad)
    except Exception as exc:  # per-point failures degrade to marked rows
        nan = math.nan
        return SweepRow(
            **base,
            P_A=nan, P_B=nan, re_X=nan, im_X=nan, abs_X=nan,
            concurrence=nan, negativity=nan, n_terms_used=0, est_error=nan,
            status=_error_code(exc),
        )
    return SweepRow(
        **base,
        P_A=r.P_A,
        P_B=r.P_B,
        re_X=r.X.real,
        im_X=r.X.imag,
        abs_X=abs(r.X),
        concurrence=r.concurrence,
        negativity=r.negativity,
        n_terms_used=r.n_terms_used,
        est_error=r.est_error,
        status="ok",
    )


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every grid point, in axis order, never aborting on one point."""
    rows = []
    for value in spec.axis.values():
        params = dict(spec.fixed)
        params[spec.axis.name] = value
        rows.append(evaluate_point(params, spec.quad))
    return rows


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)  # shortest round-trip decimal
    return str(value)


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ROW_FIELDS)
    for row in rows:
        writer.writerow([_format_cell(getattr(row, name)) for name in ROW_FIELDS])
    return buf.getvalue()


def write_csv(rows: Iterable[SweepRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))


def entanglement_margin(params: Mapping[str, float], quad: QuadratureSettings) -> float:
    """|X| - sqrt(P_A P_B), the unclipped concurrence argument.

    This is the sign-changing function the death search bisects; the clipped
    concurrence is identically zero on one side and useless for root finding.
    """
    st, detA, detB = build_point(params)
    r = respond(st, detA, detB, quad)
    return abs(r.X) - math.sqrt(r.P_A * r.P_B)


def find_sudden_death(
    fixed: Mapping[str, float],
    bracket: tuple[float, float],
    quad: QuadratureSettings | None = None,
    tol: float = 1e-4,
) -> float:
    """Bisect the horizon distance where harvested entanglement vanishes."""
    quad = quad or QuadratureSettings()
    lo, hi = bracket
    if not (0 < lo < hi):
        raise DomainError(f"need 0 < lo < hi, got bracket {bracket}")
    params = dict(fixed)

    def f(dA: float) -> float:
        params["dA_over_sigma"] = dA
        return entanglement_margin(params, quad)

    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise BracketError(
            f"no sign change of |X| - sqrt(P_A P_B) on [{lo}, {hi}]: "
            f"f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}",
            f_lo=f_lo,
            f_hi=f_hi,
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class GapOptimum(NamedTuple):
    gap: float
    value: float
    at_edge: bool


OBJECTIVES = ("min_death_distance", "max_far_concurrence")

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def optimize_gap(
    fixed: Mapping[str, float],
    objective: str,
    bracket: tuple[float, float],
    quad: QuadratureSettings | None = None,
    death_bracket: tuple[float, float] = (1e-3, 12.0),
    scan_count: int = 13,
    rel_tol: float = 1e-3,
) -> GapOptimum:
    """Coarse scan plus golden-section refinement over the energy gap.

    'max_far_concurrence' maximizes the concurrence of the configured pair
    (intended for large dA); 'min_death_distance' minimizes the sudden-death
    distance found inside death_bracket. The two optima generically differ.
    """
    quad = quad or QuadratureSettings()
    if objective not in OBJECTIVES:
        raise DomainError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    lo, hi = bracket
    if not (0 < lo < hi):
        raise DomainError(f"need 0 < lo < hi, got bracket {bracket}")

    params = dict(fixed)
    params.pop("gap_sigma", None)

    def score(gap: float) -> float:
        # internally always maximized
        p = dict(params, gap_sigma=gap)
        if objective == "max_far_concurrence":
            st, detA, detB = build_point(p)
            return respond(st, detA, detB, quad).concurrence
        return -find_sudden_death(p, death_bracket, quad)

    gaps = [float(g) for g in np.linspace(lo, hi, scan_count)]
    scores = [score(g) for g in gaps]
    best = max(range(len(gaps)), key=scores.__getitem__)

    at_edge = best in (0, len(gaps) - 1)
    if at_edge:
        warnings.warn(
            f"optimize_gap: best coarse value at bracket edge gap={gaps[best]:.6g}; "
            "no interior optimum validated",
            stacklevel=2,
        )
        value = scores[best]
        value = value if objective == "max_far_concurrence" else -value
        return GapOptimum(gaps[best], value, True)

    # golden-section refinement between the neighbors of the coarse optimum
    a, b = gaps[best - 1], gaps[best + 1]
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = score(c), score(d)
    while (b - a) > rel_tol * max(abs(a), abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = score(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = score(d)
    gap = 0.5 * (a + b)
    value = score(gap)
    value = value if objective == "max_far_concurrence" else -value
    return GapOptimum(gap, value, False)
