"""Acceptance gate: each test enforces one release criterion at its stated
tolerance and prints a single PASS/FAIL line (visible with pytest -s)."""

import math

import pytest

from btzharvest import (
    BtzSpacetime,
    QuadratureSettings,
    detector_at_distance,
    nonlocal_X,
    proper_distance,
    radius_at_horizon_distance,
    respond,
    singular_cosh_integral,
    thermal_gaussian_integral,
    transition_probability,
)
from btzharvest.oracle import OracleSettings, oracle_P, oracle_X
from btzharvest.quadrature import SingularKernelSpec
from btzharvest.response import (
    X_BRANCH,
    _p_image,
    _x_image,
    detector_coefficients,
    pair_coefficients,
)
from btzharvest.sweeps import (
    SweepSpec,
    AxisSpec,
    entanglement_margin,
    find_sudden_death,
    optimize_gap,
    run_sweep,
)
from _helpers import random_spec_library
from scipy.special import erfc

ST = BtzSpacetime(ell=10.0, mass=1.0, zeta=1)
QS = QuadratureSettings()
ORC = OracleSettings()

# five points spanning near-horizon to far-field, every gap represented
ORACLE_POINTS = [(0.5, 0.01), (1.0, 0.1), (5.0, 1.0), (100.0, 0.01), (1.0, 1.0)]

BASE = {
    "l_over_sigma": 10.0,
    "mass": 1.0,
    "zeta": 1,
    "dAB_over_sigma": 1.0,
    "delta_phi": 0.0,
    "lambda_tilde": 1.0,
}


def _report(name: str, checks: list[tuple[str, bool]]) -> None:
    failed = [label for label, ok in checks if not ok]
    verdict = "PASS" if not failed else f"FAIL ({'; '.join(failed)})"
    print(f"ACCEPTANCE {name}: {verdict}")
    assert not failed, f"{name}: {failed}"


def _pair(dA: float, omega: float, dAB: float = 1.0):
    return (
        detector_at_distance(ST, dA, Omega=omega),
        detector_at_distance(ST, dA + dAB, Omega=omega),
    )


def test_oracle_equivalence():
    checks = []
    for dA, omega in ORACLE_POINTS:
        detA, detB = _pair(dA, omega)
        p_closed = transition_probability(ST, detA, QS).value
        pb_closed = transition_probability(ST, detB, QS).value
        x_closed = nonlocal_X(ST, detA, detB, QS).value
        p_brute = oracle_P(ST, detA, ORC).value.real
        pb_brute = oracle_P(ST, detB, ORC).value.real
        x_brute = oracle_X(ST, detA, detB, ORC).value
        rel_p = abs(p_closed - p_brute) / abs(p_brute)
        rel_pb = abs(pb_closed - pb_brute) / abs(pb_brute)
        rel_x = abs(abs(x_closed) - abs(x_brute)) / abs(x_brute)
        checks.append((f"P_A@(dA={dA},gap={omega}) rel={rel_p:.2e}", rel_p <= 1e-3))
        checks.append((f"P_B@(dA={dA},gap={omega}) rel={rel_pb:.2e}", rel_pb <= 1e-3))
        checks.append((f"|X|@(dA={dA},gap={omega}) rel={rel_x:.2e}", rel_x <= 1e-3))
    _report("oracle-equivalence", checks)


def test_symmetry_suite():
    checks = []
    # equal radii -> equal probabilities
    detA = detector_at_distance(ST, 1.3, Omega=0.2)
    detB = detector_at_distance(ST, 1.3, Omega=0.2, Phi=0.9)
    pA = transition_probability(ST, detA, QS).value
    pB = transition_probability(ST, detB, QS).value
    checks.append(("equal radii P match", abs(pA - pB) / pA < 1e-10))
    # beta_X vanishes identically at equal radii
    pc = pair_coefficients(ST, detA, detB)
    checks.append(("beta_X == 0", pc.beta_X == 0.0))
    # proper-distance round trips
    worst = 0.0
    d = 1e-3
    while d <= 300.0:
        R = radius_at_horizon_distance(ST, d)
        R_back = radius_at_horizon_distance(ST, proper_distance(ST, ST.r_h, R))
        worst = max(worst, abs(R_back - R) / R)
        d *= 3.7
    checks.append((f"round trip worst={worst:.2e}", worst <= 1e-12))
    _report("symmetry-suite", checks)


def _image_tail_P(dA: float, omega: float) -> float:
    det = detector_at_distance(ST, dA, Omega=omega)
    c = detector_coefficients(ST, det)
    p = transition_probability(ST, det, QS)
    extra = 0.0
    for n in range(p.n_terms + 1, p.n_terms + 6):
        term = c.K * _p_image(c, c.alpha_minus(n), QS).value.real
        term -= ST.zeta * c.K * _p_image(c, c.alpha_plus(n), QS).value.real
        extra += 2.0 * term
    return abs(extra) / abs(p.value)


def _image_tail_X(dA: float, omega: float) -> float:
    detA, detB = _pair(dA, omega)
    pc = pair_coefficients(ST, detA, detB)
    x = nonlocal_X(ST, detA, detB, QS)
    extra = 0.0 + 0.0j
    for k in range(x.n_terms + 1, x.n_terms + 6):
        for n in (k, -k):
            term = pc.K_X * _x_image(pc, pc.alpha_minus(n), QS).value
            term -= ST.zeta * pc.K_X * _x_image(pc, pc.alpha_plus(n), QS).value
            extra += term
    return abs(extra) / abs(x.value)


def test_convergence_suite():
    checks = []
    for dA, omega in ORACLE_POINTS:
        tail_p = _image_tail_P(dA, omega)
        tail_x = _image_tail_X(dA, omega)
        checks.append((f"P tail N+5 @(dA={dA},gap={omega}) {tail_p:.1e}", tail_p < 1e-8))
        checks.append((f"X tail N+5 @(dA={dA},gap={omega}) {tail_x:.1e}", tail_x < 1e-8))
    # error estimates bound a double-resolution rerun on the 50-spec library
    tight = QuadratureSettings(rel_tol=1e-12, abs_tol=1e-14)
    ok = 0
    for spec in random_spec_library(50):
        got = singular_cosh_integral(spec, QS)
        ref = singular_cosh_integral(spec, tight)
        if abs(got.value - ref.value) <= max(got.error, 1e-15):
            ok += 1
    checks.append((f"error estimates conservative {ok}/50", ok >= 48))
    _report("convergence-suite", checks)


def test_thermal_limit():
    checks = []
    settings = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-22)
    for sigma_omega in (0.1, 1.0, 5.0):
        T = 1e-5 * sigma_omega  # T/Omega well under the 1e-3 ceiling
        got = thermal_gaussian_integral(1.0, sigma_omega, T, settings)
        want = math.sqrt(math.pi) / 2.0 * erfc(sigma_omega)
        rel = abs(got - want) / want
        checks.append((f"sigma*Omega={sigma_omega} rel={rel:.1e}", rel <= 1e-6))
    _report("thermal-limit", checks)


def _separation_zero_crossing(omega: float) -> float:
    params = dict(BASE, gap_sigma=omega, dA_over_sigma=1.0)

    def margin(dAB: float) -> float:
        return entanglement_margin(dict(params, dAB_over_sigma=dAB), QS)

    lo, hi = 0.2, 12.0
    f_lo = margin(lo)
    assert f_lo > 0 and margin(hi) < 0
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_fig1_separation_sweeps():
    checks = []
    for omega in (0.01, 0.1, 1.0):
        fixed = dict(BASE, gap_sigma=omega, dA_over_sigma=1.0)
        fixed.pop("dAB_over_sigma")
        spec = SweepSpec(
            fixed=fixed,
            axis=AxisSpec(name="dAB_over_sigma", scale="linear", min=0.5, max=6.0, count=12),
            quad=QS,
        )
        rows = run_sweep(spec)
        cs = [r.concurrence for r in rows]
        positive = [c for c in cs if c > 0]
        strictly_down = all(b < a for a, b in zip(positive, positive[1:]))
        clipped = any(c == 0.0 for c in cs)
        checks.append((f"gap={omega} strictly decreasing while positive", strictly_down))
        checks.append((f"gap={omega} reaches exactly zero by dAB=6", clipped))
    crossings = [_separation_zero_crossing(om) for om in (0.01, 0.1, 1.0)]
    checks.append(
        (f"zero crossing grows with gap {['%.3f' % c for c in crossings]}",
         crossings[0] < crossings[1] < crossings[2]),
    )
    _report("fig1-separation", checks)


def test_fig2_sudden_death_and_gap_structure():
    checks = []
    quad = QS
    # left: a sign change exists at dAB = 1
    fixed = dict(BASE, gap_sigma=0.1)
    fixed.pop("dA_over_sigma", None)
    d_death = find_sudden_death(fixed, (0.05, 5.0), quad)
    below = entanglement_margin(dict(fixed, dA_over_sigma=d_death - 5e-3), quad)
    above = entanglement_margin(dict(fixed, dA_over_sigma=d_death + 5e-3), quad)
    checks.append((f"death exists at {d_death:.4f}", d_death > 0 and below < 0 < above))

    # center: interior minimum of d_death over the gap range (0, 3)
    gaps = [0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    deaths = [
        find_sudden_death(dict(fixed, gap_sigma=g), (0.01, 2.0), quad) for g in gaps
    ]
    k_min = min(range(len(gaps)), key=deaths.__getitem__)
    interior_min = 0 < k_min < len(gaps) - 1
    checks.append(
        (f"d_death has interior minimum at gap={gaps[k_min]} "
         f"(curve {['%.3f' % d for d in deaths]})", interior_min),
    )

    # right: far-field concurrence has an interior maximum in the gap
    far = dict(BASE, dA_over_sigma=100.0)
    far_opt = optimize_gap(far, "max_far_concurrence", (0.05, 1.5), quad, scan_count=7)
    checks.append((f"far-field optimum gap={far_opt.gap:.3f}", not far_opt.at_edge))

    # the two optimizers generically differ
    death_fixed = {k: v for k, v in fixed.items() if k != "gap_sigma"}
    death_opt = optimize_gap(
        death_fixed, "min_death_distance", (0.5, 3.0), quad,
        death_bracket=(0.01, 2.0), scan_count=6,
    )
    differ = abs(death_opt.gap - far_opt.gap) > 0.25
    checks.append(
        (f"optimizers differ (death {death_opt.gap:.3f} vs far {far_opt.gap:.3f})", differ),
    )
    _report("fig2-sudden-death", checks)


def _window_rows(omega: float):
    fixed = {k: v for k, v in BASE.items() if k != "dA_over_sigma"}
    fixed["gap_sigma"] = omega
    d_death = find_sudden_death(fixed, (0.01, 5.0), QS)
    spec = SweepSpec(
        fixed=fixed,
        axis=AxisSpec(
            name="dA_over_sigma", scale="linear",
            min=0.15 * d_death, max=2.0 * d_death, count=9,
        ),
        quad=QS,
    )
    return run_sweep(spec)


def test_fig3_decomposition():
    checks = []
    # small gap: death is redshift-driven; P barely moves while |X| collapses
    rows = _window_rows(0.01)
    ps = [r.P_A for r in rows]
    xs = [r.abs_X for r in rows]
    p_var = (max(ps) - min(ps)) / max(ps)
    x_drop = 1.0 - xs[0] / xs[-1]  # first row is closest to the horizon
    checks.append((f"gap=0.01 P variation {p_var:.2%}", p_var < 0.10))
    checks.append((f"gap=0.01 |X| drop {x_drop:.2%}", x_drop > 0.50))
    # large gap: the local Hawking temperature drives P up near the horizon
    rows = _window_rows(1.0)
    growth = rows[0].P_A / rows[-1].P_A
    checks.append((f"gap=1 P growth toward horizon {growth:.2f}x", growth >= 2.0))
    _report("fig3-decomposition", checks)


def test_positivity_and_scaling():
    checks = []
    spec = SweepSpec(
        fixed={k: v for k, v in dict(BASE, gap_sigma=0.1).items() if k != "dA_over_sigma"},
        axis=AxisSpec(name="dA_over_sigma", scale="log", min=0.05, max=100.0, count=10),
        quad=QS,
    )
    rows = run_sweep(spec)
    checks.append(
        ("P_D >= -abs_tol on the grid",
         all(r.P_A >= -QS.abs_tol and r.P_B >= -QS.abs_tol for r in rows)),
    )
    checks.append(("all rows evaluated", all(r.status == "ok" for r in rows)))

    detA1, detB1 = _pair(1.0, 0.1)
    detA2 = detector_at_distance(ST, 1.0, Omega=0.1, lambda_tilde=2.0)
    detB2 = detector_at_distance(ST, 2.0, Omega=0.1, lambda_tilde=2.0)
    r1 = respond(ST, detA1, detB1, QS)
    r2 = respond(ST, detA2, detB2, QS)
    exact = (
        r2.P_A == 4.0 * r1.P_A
        and r2.P_B == 4.0 * r1.P_B
        and r2.X == 4.0 * r1.X
        and r2.concurrence == 4.0 * r1.concurrence
        and r2.negativity == 4.0 * r1.negativity
    )
    checks.append(("coupling-squared scaling exact", exact))
    checks.append(("X branch fixed by the brute-force route", X_BRANCH == +1.0))
    _report("positivity-scaling", checks)
