"""Geometry: horizon, redshift, proper distances, local temperature."""

import math

import pytest
from hypothesis import given, strategies as st_

from btzharvest import (
    BtzSpacetime,
    DomainError,
    StaticDetector,
    detector_at_distance,
    horizon_radius,
    local_temperature,
    proper_distance,
    radius_at_horizon_distance,
    redshift_factor,
)
from _helpers import STD


def test_horizon_radius_examples():
    assert horizon_radius(10.0, 1.0) == 10.0
    assert horizon_radius(10.0, 4.0) == 20.0
    assert horizon_radius(2.5, 0.09) == pytest.approx(0.75, rel=1e-15)


@pytest.mark.parametrize("ell,mass", [(0.0, 1.0), (-1.0, 1.0), (10.0, 0.0), (10.0, -2.0)])
def test_horizon_radius_domain(ell, mass):
    with pytest.raises(DomainError):
        horizon_radius(ell, mass)


def test_spacetime_invariants():
    st = BtzSpacetime(ell=3.0, mass=2.0, zeta=-1)
    assert st.r_h == 3.0 * math.sqrt(2.0)
    with pytest.raises(DomainError):
        BtzSpacetime(ell=1.0, mass=1.0, zeta=2)
    with pytest.raises(DomainError):
        BtzSpacetime(ell=-1.0, mass=1.0)


def test_detector_validation():
    with pytest.raises(DomainError):
        StaticDetector(R=11.0, Omega=0.1, sigma=0.0)
    with pytest.raises(DomainError):
        StaticDetector(R=9.0, Omega=0.1).validate_exterior(STD)
    with pytest.raises(DomainError):
        detector_at_distance(STD, 0.0, Omega=0.1)


def test_redshift_examples():
    assert redshift_factor(STD, 10.0) == 0.0
    # frozen: sinh(0.1) at 20 digits
    assert redshift_factor(STD, 10.0 * math.cosh(0.1)) == pytest.approx(
        0.10016675001984402582, rel=1e-14
    )
    with pytest.raises(DomainError):
        redshift_factor(STD, 9.999)


def test_redshift_monotone():
    grid = [10.0 + 0.1 * k for k in range(1, 200)]
    vals = [redshift_factor(STD, R) for R in grid]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    # grows like R/ell far out
    assert redshift_factor(STD, 1e6) == pytest.approx(1e6 / 10.0, rel=1e-9)


def test_proper_distance_examples():
    assert proper_distance(STD, 12.0, 12.0) == 0.0
    # analytic inversion R = r_h cosh(d/ell)
    assert proper_distance(STD, 10.0, 10.0 * math.cosh(0.2)) == pytest.approx(2.0, rel=1e-12)
    with pytest.raises(DomainError):
        proper_distance(STD, 12.0, 11.0)
    with pytest.raises(DomainError):
        proper_distance(STD, 9.0, 11.0)


@given(
    d1=st_.floats(min_value=0.0, max_value=150.0),
    d2=st_.floats(min_value=0.0, max_value=150.0),
    d3=st_.floats(min_value=0.0, max_value=150.0),
)
def test_proper_distance_additivity(d1, d2, d3):
    radii = sorted(radius_at_horizon_distance(STD, d) for d in (d1, d2, d3))
    r1, r2, r3 = radii
    total = proper_distance(STD, r1, r3)
    split = proper_distance(STD, r1, r2) + proper_distance(STD, r2, r3)
    assert split == pytest.approx(total, rel=1e-12, abs=1e-12)


def test_radius_at_horizon_distance_examples():
    assert radius_at_horizon_distance(STD, 0.0) == STD.r_h
    assert radius_at_horizon_distance(STD, 1.0) == pytest.approx(
        10.050041680558035990, rel=1e-14
    )
    assert radius_at_horizon_distance(STD, 100.0) == pytest.approx(
        10.0 * math.cosh(10.0), rel=1e-14
    )
    with pytest.raises(DomainError):
        radius_at_horizon_distance(STD, -0.5)


def test_round_trip_radius_to_distance():
    # R -> d -> R identity to 1e-12 relative across the whole working range
    for k in range((300 - 1) * 2):
        d = 1e-3 + k * 0.25
        if d > 300.0:
            break
        R = radius_at_horizon_distance(STD, d)
        d_back = proper_distance(STD, STD.r_h, R)
        R_back = radius_at_horizon_distance(STD, d_back)
        assert abs(R_back - R) <= 1e-12 * R


def test_round_trip_at_moderate_distance():
    # d -> R -> d direction, frozen example at d = 1
    R = radius_at_horizon_distance(STD, 1.0)
    assert proper_distance(STD, STD.r_h, R) == pytest.approx(1.0, rel=1e-12)


def test_local_temperature_examples():
    # frozen: r_h/(2 pi ell sqrt(R^2-r_h^2)) at the two reference radii
    assert local_temperature(STD, 10.0 * math.cosh(0.1)) == pytest.approx(
        0.15888999399537787173, rel=1e-13
    )
    assert local_temperature(STD, 10.0 * math.cosh(1.0)) == pytest.approx(
        0.013542782627579131798, rel=1e-13
    )
    with pytest.raises(DomainError):
        local_temperature(STD, 10.0)


def test_local_temperature_diverges_and_decreases():
    ts = [local_temperature(STD, 10.0 + 10.0 ** (-k)) for k in range(1, 8)]
    assert all(b > a for a, b in zip(ts, ts[1:]))
    assert ts[-1] > 1e2
    grid = [local_temperature(STD, 10.0 + 0.5 * k) for k in range(1, 40)]
    assert all(b < a for a, b in zip(grid, grid[1:]))


@given(
    mass=st_.floats(min_value=1e-3, max_value=1e3),
    ell=st_.floats(min_value=1e-2, max_value=1e3),
    d=st_.floats(min_value=1e-3, max_value=50.0),
)
def test_temperature_redshift_identity(mass, ell, d):
    # T * gamma * ell^2 * 2 pi == r_h, an algebraic identity of the formulas
    st = BtzSpacetime(ell=ell, mass=mass)
    R = radius_at_horizon_distance(st, d)
    lhs = local_temperature(st, R) * redshift_factor(st, R) * ell**2 * 2.0 * math.pi
    assert lhs == pytest.approx(st.r_h, rel=1e-14)
