"""Brute-force route: wiring, extrapolation, symmetries, cross-checks."""

import math

import numpy as np
import pytest

from btzharvest import DomainError, detector_at_distance, redshift_factor
from btzharvest.oracle import (
    OracleSettings,
    _double_time_integral,
    extrapolate_to_zero,
    oracle_C,
    oracle_P,
    oracle_X,
    oracle_X_triangles,
)
from _helpers import STD

# loose settings keep each evaluation below a second; precision is the
# acceptance suite's job
FAST = OracleSettings(eps_values=(0.1, 0.05, 0.025), rel_tol=1e-8, gl_nodes=64)
# full regulator ladder at reduced node count, for residual-quality checks
MED = OracleSettings(rel_tol=1e-8, gl_nodes=64)


def test_settings_validation():
    with pytest.raises(DomainError):
        OracleSettings(eps_values=(0.1,))
    with pytest.raises(DomainError):
        OracleSettings(eps_values=(0.05, 0.1))
    with pytest.raises(DomainError):
        OracleSettings(eps_values=(0.1, -0.05))
    with pytest.raises(DomainError):
        OracleSettings(t_window=3.0)


def test_extrapolation_recovers_polynomial():
    eps = np.array([0.4, 0.2, 0.1, 0.05])
    cubic = 3.0 + 2.0 * eps + 1.5 * eps**2 - 0.3 * eps**3
    got, residual = extrapolate_to_zero(eps, cubic)
    assert got == pytest.approx(3.0, rel=1e-12)
    # the drop-one residual reports the unresolved cubic remainder
    assert 0 < residual < 1e-2
    quadratic = 3.0 + 2.0 * eps + 1.5 * eps**2
    got_q, residual_q = extrapolate_to_zero(eps, quadratic)
    assert got_q == pytest.approx(3.0, rel=1e-12)
    assert residual_q < 1e-10  # both fits exact for quadratic data


def test_oracle_P_basic():
    det = detector_at_distance(STD, 1.0, Omega=0.1)
    got = oracle_P(STD, det, MED)
    assert got.value.imag == 0.0  # reported as real
    assert got.value.real > 0
    assert got.residual < 1e-4 * got.value.real


def test_oracle_P_stationarity():
    # shifting both switching centers along the Killing flow changes nothing
    det = detector_at_distance(STD, 1.0, Omega=0.1)
    base = oracle_P(STD, det, FAST).value
    g = redshift_factor(STD, det.R)
    shifted = oracle_P(STD, det, FAST, center_shift=0.8 / g).value
    assert shifted == pytest.approx(base, rel=1e-6)


def test_oracle_P_angular_homogeneity():
    det = detector_at_distance(STD, 1.0, Omega=0.1)
    moved = detector_at_distance(STD, 1.0, Omega=0.1, Phi=2.1)
    assert oracle_P(STD, det, FAST).value == oracle_P(STD, moved, FAST).value


def test_oracle_X_exchange_symmetry():
    detA = detector_at_distance(STD, 1.0, Omega=0.1)
    detB = detector_at_distance(STD, 2.0, Omega=0.1)
    xab = oracle_X(STD, detA, detB, FAST).value
    xba = oracle_X(STD, detB, detA, FAST).value
    assert abs(xab) == pytest.approx(abs(xba), rel=1e-7)


def test_oracle_C_matches_P_on_one_worldline():
    # with equal gaps and coincident worldlines C reduces to the P integrand
    det = detector_at_distance(STD, 1.0, Omega=0.1)
    c = oracle_C(STD, det, det, FAST).value
    p = oracle_P(STD, det, FAST).value
    assert c.real == pytest.approx(p.real, rel=1e-9)
    assert abs(c.imag) < 1e-9


def test_oracle_C_unequal_gaps_and_clustering():
    detA = detector_at_distance(STD, 2.0, Omega=0.1)
    near = detector_at_distance(STD, 3.0, Omega=0.25)
    far = detector_at_distance(STD, 14.0, Omega=0.25)
    c_near = abs(oracle_C(STD, detA, near, FAST).value)
    c_far = abs(oracle_C(STD, detA, far, FAST).value)
    assert c_near > 0
    assert c_far < 0.25 * c_near


def test_triangles_match_rotated_decomposition():
    # two explicit (t, t') triangles against the rotated-coordinate kernel at
    # one fixed regulator
    detA = detector_at_distance(STD, 1.0, Omega=0.1)
    detB = detector_at_distance(STD, 1.8, Omega=0.1)
    gA = redshift_factor(STD, detA.R)
    gB = redshift_factor(STD, detB.R)
    eps = 0.05 / math.sqrt(gA * gB)
    tri = oracle_X_triangles(STD, detA, detB, eps, FAST)
    J, _ = _double_time_integral(
        STD, detA.R, detB.R, 0.0, gA, gB, 1.0,
        freq_w=0.5 * 0.1 * (gA - gB), freq_v=0.5 * 0.1 * (gA + gB),
        eps=eps, settings=FAST, time_ordered=True,
    )
    rot = -gA * gB * J
    assert tri == pytest.approx(rot, rel=1e-4)
