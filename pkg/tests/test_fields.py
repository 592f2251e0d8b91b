"""Scenario containers, field vectors, unit constants, drive protocols."""
import math

import numpy as np
import pytest

from ringspin.fields import (ACRingScenario, CombinedScenario, DriveProtocol,
                             SternScenario, UnitSystem, b0_stern, b_phi,
                             cone_axis, electric_field_vector, evaluate_drive,
                             magnetic_field_vector, orbital_energy,
                             with_drive_value)


def test_scenario_validation():
    with pytest.raises(ValueError):
        ACRingScenario(alpha=-0.1, chi_tilt=1.0)
    with pytest.raises(ValueError):
        ACRingScenario(alpha=0.5, chi_tilt=3.5)
    with pytest.raises(ValueError):
        ACRingScenario(alpha=0.5, chi_tilt=1.0, radius=0.0)
    with pytest.raises(ValueError):
        SternScenario(b_phi=-1.0, b_z=0.5, omega=1.0)
    with pytest.raises(ValueError):
        SternScenario(b_phi=1.0, b_z=0.5, omega=0.0)
    with pytest.raises(ValueError):
        SternScenario(b_phi=1.0, b_z=0.5, omega=1.0, n=-2)
    with pytest.raises(ValueError):
        CombinedScenario(alpha=0.3, chi_tilt=1.0, b_phi=0.2, b_z=0.1, omega=-1.0)
    # boundary values are legal
    ACRingScenario(alpha=0.0, chi_tilt=0.0)
    ACRingScenario(alpha=0.0, chi_tilt=math.pi)


def test_e_field_scaling():
    s = ACRingScenario(alpha=0.9, chi_tilt=1.4)
    assert s.e_field == pytest.approx(1.8)
    s2 = ACRingScenario(alpha=0.9, chi_tilt=1.4, radius=2.0)
    assert s2.e_field == pytest.approx(0.9)


def test_cone_axis_geometry():
    n = cone_axis(0.7, 1.1)
    assert n.shape == (3,)
    assert np.linalg.norm(n) == pytest.approx(1.0)
    assert n[2] == pytest.approx(math.cos(1.1))
    arr = cone_axis(np.linspace(0, 2 * math.pi, 9), 0.4)
    assert arr.shape == (9, 3)
    assert np.allclose(np.linalg.norm(arr, axis=1), 1.0)


def test_electric_field_tilt_relation():
    # E_hat x phi_hat must reproduce the cone axis for every phi
    s = ACRingScenario(alpha=0.6, chi_tilt=0.9)
    for phi in (0.0, 1.3, 2.9, 4.4):
        e = electric_field_vector(s, phi)
        assert np.linalg.norm(e) == pytest.approx(s.e_field)
        phi_hat = np.array([-math.sin(phi), math.cos(phi), 0.0])
        n = np.cross(e / np.linalg.norm(e), phi_hat)
        assert np.allclose(n, cone_axis(phi, s.chi_tilt), atol=1e-14)


def test_magnetic_field_vector_components():
    s = SternScenario(b_phi=0.8, b_z=0.6, omega=1.1)
    b = magnetic_field_vector(s, 0.0)
    assert np.allclose(b, [0.0, 0.8, 0.6])
    b = magnetic_field_vector(s, math.pi / 2)
    assert np.allclose(b, [-0.8, 0.0, 0.6], atol=1e-15)


def test_gauge_field_coefficients():
    s = ACRingScenario(alpha=0.9, chi_tilt=1.4)
    obs = b_phi(s, 0.0)
    assert obs.c0 == 0.0
    assert np.allclose(obs.vector,
                       2 * 0.9 * np.array([math.sin(1.4), 0.0, math.cos(1.4)]))
    # radius-independent: alpha fixes the coupling, not E alone
    s2 = ACRingScenario(alpha=0.9, chi_tilt=1.4, radius=3.0)
    assert np.allclose(b_phi(s2, 0.0).vector, obs.vector)

    st = SternScenario(b_phi=0.8, b_z=0.6, omega=1.1)
    obs = b0_stern(st, 0.0)
    assert np.allclose(obs.vector, [0.0, -0.8, -0.6])


def test_orbital_energy_axial_shift():
    s = SternScenario(b_phi=0.0, b_z=0.6, omega=1.0, n=2)
    expected = (2 - math.pi * 0.6 / 2.0) ** 2
    assert orbital_energy(s) == pytest.approx(expected, rel=1e-12)
    assert orbital_energy(s, n=0) == pytest.approx((math.pi * 0.3) ** 2, rel=1e-12)
    # no axial field: plain n^2 / a^2 spectrum
    s0 = SternScenario(b_phi=0.4, b_z=0.0, omega=1.0, n=3, radius=2.0)
    assert orbital_energy(s0) == pytest.approx(9.0 / 4.0, rel=1e-12)


def test_unit_systems():
    u = UnitSystem.internal()
    assert u.mu == 1.0
    assert u.flux_quantum == pytest.approx(2 * math.pi)
    si = UnitSystem.si()
    # mu = e hbar / (2 m): the moment energy in a 1 T field
    assert si.mu == pytest.approx(9.2740100727e-24, rel=1e-8)
    assert si.flux_quantum == pytest.approx(4.135667696e-15, rel=1e-9)


def test_drive_protocol_validation():
    d = DriveProtocol(target="alpha", knots=((0.0, 0.2), (1.0, 0.6)))
    assert d.t_start == 0.0 and d.t_end == 1.0
    with pytest.raises(ValueError):
        DriveProtocol(target="chi_tilt", knots=((0.0, 0.2), (1.0, 0.6)))
    with pytest.raises(ValueError):
        DriveProtocol(target="alpha", knots=((0.0, 0.2),))
    with pytest.raises(ValueError):
        DriveProtocol(target="alpha", knots=((0.0, 0.2), (0.0, 0.6)))


def test_drive_evaluation():
    d = DriveProtocol(target="b_phi", knots=((0.0, 0.0), (2.0, 1.0), (4.0, 1.0)))
    assert evaluate_drive(d, 1.0) == pytest.approx(0.5)
    assert evaluate_drive(d, 3.0) == pytest.approx(1.0)
    vals = evaluate_drive(d, np.array([0.0, 2.0, 4.0]))
    assert np.allclose(vals, [0.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        evaluate_drive(d, -0.5)
    with pytest.raises(ValueError):
        evaluate_drive(d, 4.5)


def test_with_drive_value():
    s = SternScenario(b_phi=0.0, b_z=0.6, omega=1.1)
    d = DriveProtocol(target="b_phi", knots=((0.0, 0.0), (2.0, 1.0)))
    s1 = with_drive_value(s, d, 1.0)
    assert s1.b_phi == pytest.approx(0.5)
    assert s1.b_z == s.b_z and s1.omega == s.omega
    ac = ACRingScenario(alpha=0.1, chi_tilt=1.0)
    with pytest.raises(ValueError):
        with_drive_value(ac, d, 1.0)
