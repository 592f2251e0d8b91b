"""Classical spin transport, the flux ledger, and the two emf routes."""
import math

import numpy as np
import pytest

from ringspin.classical import (cone_sampler, effective_potential,
                                faraday_compare, flux_ledger,
                                line_integral_aeff, precess, precession_axis,
                                ryu_motive_force, stern_si_estimate)
from ringspin.fields import (ACRingScenario, DriveProtocol, SternScenario,
                             cone_axis)
from ringspin.invariant import cone_solution, solve_beta

AC = ACRingScenario(alpha=0.9, chi_tilt=1.4)
STERN = SternScenario(b_phi=0.8, b_z=0.6, omega=1.1)


# --- precession -------------------------------------------------------------

def test_zero_field_spin_is_constant():
    s = SternScenario(b_phi=0.0, b_z=0.0, omega=1.0)
    traj = precess(s, [0.3, -0.1, 0.35], frame_term=False, n_steps=64)
    assert np.max(np.abs(traj.spins - traj.spins[0])) < 1e-15


def test_axial_field_precession_closed_form():
    # ds/dt = s x (2 b z_hat): the azimuth advances by -2b per unit time
    b = 0.6
    s = SternScenario(b_phi=0.0, b_z=b, omega=1.0)
    traj = precess(s, [0.5, 0.0, 0.0], t_final=1.0, n_steps=777,
                   frame_term=False)
    want = 0.5 * np.array([math.cos(2 * b), -math.sin(2 * b), 0.0])
    assert np.max(np.abs(traj.spins[-1] - want)) < 1e-12


def test_spin_length_is_conserved():
    traj = precess(AC, [0.1, 0.2, 0.44], omega=1.0, n_steps=4096)
    lens = np.linalg.norm(traj.spins, axis=1)
    assert np.max(np.abs(lens - lens[0])) < 1e-13


def test_bare_moment_equation_rides_the_quantum_cone():
    # without the frame term the steady cone coincides with the invariant one
    sol = solve_beta(AC)
    s0 = cone_sampler(sol)(0.0)
    traj = precess(AC, s0, omega=1.0, n_steps=4096, frame_term=False)
    want = 0.5 * cone_axis(traj.phis, sol.beta)
    assert np.max(np.abs(traj.spins - want)) < 1e-6   # measured 1.6e-7


def test_frame_term_moves_the_steady_cone_to_the_tilt():
    chi = AC.chi_tilt
    s0 = 0.5 * cone_axis(0.0, chi)
    traj = precess(AC, s0, omega=1.0, n_steps=4096, frame_term=True)
    want = 0.5 * cone_axis(traj.phis, chi)
    assert np.max(np.abs(traj.spins - want)) < 1e-6
    # and the invariant cone is NOT steady under that variant
    s0_beta = cone_sampler(solve_beta(AC))(0.0)
    traj2 = precess(AC, s0_beta, omega=1.0, n_steps=4096, frame_term=True)
    want2 = 0.5 * cone_axis(traj2.phis, solve_beta(AC).beta)
    assert np.max(np.abs(traj2.spins - want2)) > 0.1


def test_precession_axis_composition():
    # electric ring at orbit rate omega: A = 2 omega E a n_hat (- omega z)
    a0 = precession_axis(AC, 0.7, omega=1.3, frame_term=False)
    assert np.allclose(a0, 2 * 1.3 * 2 * 0.9 * cone_axis(0.7, 1.4), atol=1e-14)
    a1 = precession_axis(AC, 0.7, omega=1.3, frame_term=True)
    assert np.allclose(a1 - a0, [0.0, 0.0, -1.3], atol=1e-15)
    b0 = precession_axis(STERN, 0.0, omega=STERN.omega, frame_term=False)
    assert np.allclose(b0, [0.0, 1.6, 1.2], atol=1e-14)


def test_precess_guards():
    with pytest.raises(ValueError):
        precess(AC, [0.0, 0.0, 0.5])   # AC ring carries no orbit rate
    with pytest.raises(ValueError):
        precess(STERN, [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        precess(STERN, [0.0, 0.0, 0.5], omega=-1.0)


# --- effective potential and the loop integral -------------------------------

def test_effective_potential_special_cases():
    scen = ACRingScenario(alpha=0.0, chi_tilt=0.0)
    # no field, spin along r_hat: both terms vanish
    phi = 0.8
    r_hat = np.array([math.cos(phi), math.sin(phi), 0.0])
    assert np.allclose(effective_potential(0.5 * r_hat, phi, scen), 0.0,
                       atol=1e-15)
    # no field, spin pinned along +z: constant tangential component -|s|/a
    a_eff = effective_potential([0.0, 0.0, 0.5], phi, scen)
    phi_hat = np.array([-math.sin(phi), math.cos(phi), 0.0])
    assert a_eff @ phi_hat == pytest.approx(-0.5, abs=1e-15)
    assert np.linalg.norm(a_eff) == pytest.approx(0.5, abs=1e-15)


def test_line_integral_matches_ledger_identity():
    # loop integral = phi_dyn + phi_geo - pi exactly (the -pi is the
    # constant from the spin-cross-r term, derivative-neutral)
    sol = cone_solution(AC, "+")
    led = flux_ledger(AC, "+")
    line = line_integral_aeff(cone_sampler(sol), AC, n=512)
    assert line == pytest.approx(9.642537533922527, abs=1e-9)
    assert line == pytest.approx(led.phi_dyn_ac + led.phi_geo - math.pi,
                                 abs=1e-10)
    # the minus branch satisfies the same identity on its own cone
    led_m = flux_ledger(AC, "-")
    line_m = line_integral_aeff(cone_sampler(cone_solution(AC, "-")), AC, n=512)
    assert line_m == pytest.approx(led_m.phi_dyn_ac + led_m.phi_geo - math.pi,
                                   abs=1e-10)


def test_flux_ledger_entries():
    led = flux_ledger(ACRingScenario(alpha=0.9, chi_tilt=1.4, ab_flux=0.25))
    beta = solve_beta(AC).beta
    assert led.phi_ab == pytest.approx(math.pi / 2.0, abs=1e-15)
    assert led.phi_geo == pytest.approx(math.pi * (1 - math.cos(beta)), abs=1e-12)
    assert led.phi_dyn_ac == pytest.approx(
        4 * math.pi * 0.9 * (math.sin(beta) * math.sin(1.4)
                             + math.cos(beta) * math.cos(1.4)), abs=1e-12)
    assert led.phi_total == pytest.approx(
        led.phi_ab + led.phi_dyn_ac + led.phi_geo, abs=1e-14)
    # lower branch rides the antipodal cone
    led_m = flux_ledger(AC, "-")
    assert led_m.phi_geo == pytest.approx(math.pi * (1 + math.cos(beta)), abs=1e-12)


# --- force route vs flux route ----------------------------------------------

def test_faraday_two_routes_agree_alpha_ramp():
    drive = DriveProtocol(target="alpha", knots=((0.0, 0.2), (1.0, 0.6)))
    rep = faraday_compare(AC, drive, n_t=33, n_ring=256, n_steps=1024)
    assert rep.relative < 1e-4
    assert rep.max_abs_flux > 0.1  # the comparison is not vacuous


def test_faraday_two_routes_agree_bphi_ramp():
    drive = DriveProtocol(target="b_phi", knots=((0.0, 0.0), (2.0, 1.0)))
    rep = faraday_compare(STERN, drive, n_t=33, n_ring=256, n_steps=1024)
    assert rep.relative < 1e-4
    assert rep.max_abs_flux > 0.05


def test_ordinary_faraday_recovered_and_second_order():
    # alpha = 0, only the AB flux ramps; the flux route must reproduce
    # -d phi_ab/dt with a second-order error in the sample spacing
    scen = ACRingScenario(alpha=0.0, chi_tilt=0.0, ab_flux=0.0)
    ts_knots = np.linspace(0.0, 1.0, 65)
    cubic = ts_knots ** 2 * (3.0 - 2.0 * ts_knots)
    drive = DriveProtocol(target="ab_flux",
                          knots=tuple(zip(ts_knots.tolist(), cubic.tolist())))

    def exact(ts):
        return -2.0 * math.pi * 6.0 * ts * (1.0 - ts)

    errs = []
    for n_t in (33, 65):
        rep = faraday_compare(scen, drive, n_t=n_t, n_ring=64, n_steps=64)
        errs.append(float(np.max(np.abs(rep.eps_flux - exact(rep.ts)))))
        # both routes coincide identically when only the AB term moves
        assert rep.max_abs_diff < 1e-12
    ratio = errs[0] / errs[1]
    assert 3.3 < ratio < 4.7


def test_ryu_route_is_the_dynamical_term():
    drive = DriveProtocol(target="alpha", knots=((0.0, 0.2), (1.0, 0.6)))
    rep = faraday_compare(AC, drive, n_t=33, n_ring=128, n_steps=512)
    eps_ryu = ryu_motive_force(AC, drive, rep.ts)
    want = rep.eps_flux - rep.eps_geo_term - rep.eps_ab_term
    scale = np.max(np.abs(rep.eps_flux))
    assert np.max(np.abs(eps_ryu - want)) / scale < 1e-8
    # it differs from the full flux route by exactly the geometric piece
    assert np.max(np.abs(rep.eps_geo_term)) > 1e-3


# --- SI estimate --------------------------------------------------------------

def test_si_moment_energy_scale():
    est = stern_si_estimate()
    assert est.mu_b_z == pytest.approx(9.27e-24, rel=5e-3)


def test_si_ramp_peak_voltage():
    est = stern_si_estimate()
    assert est.volts_peak == pytest.approx(1.715674363015482e-07, rel=1e-9)
    assert 1e-8 < est.volts_peak < 1e-6
    # fast-orbit regime: the half frame quantum is comparable to mu B
    assert est.hbar_omega / 2.0 == pytest.approx(est.mu_b_z, rel=0.5)


def test_si_estimate_guards():
    with pytest.raises(ValueError):
        stern_si_estimate(ramp_time=0.0)
    with pytest.raises(ValueError):
        stern_si_estimate(hbar_omega=-1.0)
