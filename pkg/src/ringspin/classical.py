"""Classical spin transport, effective flux bookkeeping, and motive forces.

The classical side mirrors the quantum one.  A moment carried around the
ring precesses about an axis set by the local fields; riding the
synchronous cone, its two vector-potential-like couplings (moment crossed
with the electric field, and the spin-texture term) integrate around the
orbit to effective fluxes.  Slowly ramping any field then produces an emf
two independent ways:

* force route: differentiate the loop integral of the effective potential;
* flux route: differentiate the ledger total
  Phi_T = Phi_AB + Phi_dyn + Phi_geo (all in radians, i.e. units of the
  flux quantum over 2*pi).

The two must agree, and faraday_compare measures how well they do.  Both
routes are differentiated with the same stencil (centered inside, one-sided
second order at the ends) so the comparison probes physics, not stencils.

Sign conventions.  The ledger's geometric entry is half the solid angle of
the synchronous cone, pi*(1 - cos theta), which rises from 0 (cone closed
upward) to 2*pi (closed downward); its time derivative is what the force
route reproduces.  The transport-convention geometric phase from the
quantum propagator is minus this entry, up to a constant 2*pi on the lower
branch, and the reports state that correspondence explicitly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import (ACRingScenario, CombinedScenario, DriveProtocol,
                     SternScenario, UnitSystem, cone_axis,
                     electric_field_vector, evaluate_drive,
                     magnetic_field_vector, with_drive_value)
from .invariant import cone_solution
from .propagate import decompose_phases, propagate

_SPIN_LENGTH = 0.5  # |s| = hbar/2 in internal units


@dataclass(frozen=True)
class ClassicalSpinTrajectory:
    ts: np.ndarray
    spins: np.ndarray      # (n+1, 3), |s| = 1/2 preserved to rounding
    omega: float
    frame_term: bool
    scenario: object

    @property
    def phis(self) -> np.ndarray:
        """Orbit angle of the carrier at each sample."""
        return self.omega * self.ts


@dataclass(frozen=True)
class FluxLedger:
    """Effective fluxes threading the orbit at one instant, in radians."""

    t: float
    phi_ab: float
    phi_dyn_ac: float
    phi_geo: float

    @property
    def phi_total(self) -> float:
        return self.phi_ab + self.phi_dyn_ac + self.phi_geo


@dataclass(frozen=True)
class MotiveForceReport:
    """Force-route vs flux-route emf along a drive, on a shared time grid."""

    ts: np.ndarray
    eps_force: np.ndarray
    eps_flux: np.ndarray
    phi_ab: np.ndarray
    phi_dyn_ac: np.ndarray
    phi_geo: np.ndarray
    eps_ab_term: np.ndarray
    eps_dyn_term: np.ndarray
    eps_geo_term: np.ndarray
    max_abs_diff: float
    max_abs_flux: float
    relative: float
    boundary_one_sided: bool
    branch: str
    n_ring: int
    n_steps: int


@dataclass(frozen=True)
class SternSIEstimate:
    """SI-unit emf estimate for an azimuthal-field ramp on the magnetic ring."""

    ts: np.ndarray
    volts: np.ndarray
    volts_peak: float
    hbar_omega: float   # J
    mu_b_z: float       # J
    chi_end: float
    ramp_time: float


def _branch_cone(solution) -> tuple[float, float]:
    """(polar, azimuth) of the cone the stated branch actually rides."""
    if solution.branch == "+":
        return solution.beta, solution.azimuth
    return math.pi - solution.beta, solution.azimuth + math.pi


def cone_sampler(solution):
    """Spin field s(phi) of length 1/2 riding the solution's cone."""
    theta, az = _branch_cone(solution)
    st, ct = math.sin(theta), math.cos(theta)

    def sample(phi: float) -> np.ndarray:
        return _SPIN_LENGTH * np.array([st * math.cos(phi + az),
                                        st * math.sin(phi + az), ct])

    return sample


def _rotate(v: np.ndarray, axis: np.ndarray, angle: float) -> np.ndarray:
    """Rotate v about the unit axis by angle (Rodrigues form)."""
    c, s = math.cos(angle), math.sin(angle)
    return c * v + s * np.cross(axis, v) + (1.0 - c) * np.dot(axis, v) * axis


def precession_axis(scenario, phi, omega: float, frame_term: bool = True) -> np.ndarray:
    """Lab-frame precession axis A in ds/dt = s x A at orbit angle phi.

    A = (e/mc) (B - (v/c) x E) - omega * z_hat, with the frame term
    optional: dropping it gives the bare moment-in-field equation, which is
    the one whose steady cone coincides with the quantum invariant cone.
    """
    phi = float(phi)
    b = magnetic_field_vector(scenario, phi) if hasattr(scenario, "b_z") \
        else np.zeros(3)
    a_axis = 2.0 * b
    if hasattr(scenario, "alpha") and scenario.alpha != 0.0:
        # -v x E = omega * a * E * n(phi); radius cancels against E ~ 1/a
        a_axis = a_axis + 2.0 * omega * (2.0 * scenario.alpha) * cone_axis(phi, scenario.chi_tilt)
    if frame_term:
        a_axis = a_axis - np.array([0.0, 0.0, omega])
    return a_axis


def precess(scenario, s0, omega: float | None = None, t_final: float | None = None,
            n_steps: int = 4096, frame_term: bool = True) -> ClassicalSpinTrajectory:
    """Integrate ds/dt = s x A around the ring with exact rotation steps.

    Each step rotates s about the midpoint axis, so |s| is conserved to
    rounding regardless of step count.  omega defaults to the scenario's
    own orbit rate when it has one; t_final defaults to one orbit period.
    """
    if omega is None:
        omega = getattr(scenario, "omega", None)
        if omega is None:
            raise ValueError("scenario has no orbit rate; pass omega explicitly")
    omega = float(omega)
    if omega <= 0.0:
        raise ValueError(f"omega must be > 0, got {omega}")
    if t_final is None:
        t_final = 2.0 * math.pi / omega
    n = int(n_steps)
    if n < 1:
        raise ValueError("n_steps must be >= 1")
    s = np.asarray(s0, dtype=float).copy()
    if s.shape != (3,) or not np.all(np.isfinite(s)) or np.linalg.norm(s) == 0.0:
        raise ValueError("s0 must be a finite nonzero 3-vector")

    ts = np.linspace(0.0, float(t_final), n + 1)
    dt = ts[1] - ts[0]
    spins = np.empty((n + 1, 3))
    spins[0] = s
    for k in range(n):
        mid = (ts[k] + ts[k + 1]) / 2.0
        a_axis = precession_axis(scenario, omega * mid, omega, frame_term)
        mag = float(np.linalg.norm(a_axis))
        if mag == 0.0:
            spins[k + 1] = s
            continue
        # ds/dt = s x A is rotation about A at rate -|A|
        s = _rotate(s, a_axis / mag, -mag * dt)
        spins[k + 1] = s
    return ClassicalSpinTrajectory(ts=ts, spins=spins, omega=omega,
                                   frame_term=frame_term, scenario=scenario)


def effective_potential(s, phi: float, scenario) -> np.ndarray:
    """Effective vector potential seen by a carried moment, at orbit angle phi.

    A_eff = (1/e) mu x E - (c / e a) s x r_hat with mu = (e/mc) s.  In
    internal units that is 2 s x E - s x r_hat / a.  With no electric field
    and s along r_hat both terms vanish; a spin pinned along +z contributes
    a constant tangential component -|s| / a.
    """
    s = np.asarray(s, dtype=float)
    phi = float(phi)
    e_vec = electric_field_vector(scenario, phi) if hasattr(scenario, "alpha") \
        else np.zeros(3)
    r_hat = np.array([math.cos(phi), math.sin(phi), 0.0])
    return 2.0 * np.cross(s, e_vec) - np.cross(s, r_hat) / scenario.radius


def line_integral_aeff(sampler, scenario, n: int = 512) -> float:
    """Loop integral of A_eff . dl for a spin field sampler(phi) -> s.

    Uniform trapezoid on the periodic integrand; second-order convergent in
    n, spectrally accurate for smooth cone fields.
    """
    n = int(n)
    if n < 8:
        raise ValueError("n must be >= 8")
    dphi = 2.0 * math.pi / n
    total = 0.0
    for k in range(n):
        phi = k * dphi
        a_eff = effective_potential(sampler(phi), phi, scenario)
        phi_hat = np.array([-math.sin(phi), math.cos(phi), 0.0])
        total += float(a_eff @ phi_hat)
    return total * scenario.radius * dphi


def _phi_dyn_closed_form(scenario, theta: float, az: float) -> float:
    """Ledger entry for the moment-cross-E loop integral on a given cone."""
    alpha = getattr(scenario, "alpha", 0.0)
    if alpha == 0.0:
        return 0.0
    chi = scenario.chi_tilt
    return 4.0 * math.pi * alpha * (math.sin(theta) * math.sin(chi) * math.cos(az)
                                    + math.cos(theta) * math.cos(chi))


def flux_ledger(scenario, branch: str = "+", t: float = 0.0) -> FluxLedger:
    """Analytic flux ledger of the synchronous cone, in radians."""
    sol = cone_solution(scenario, branch)
    theta, az = _branch_cone(sol)
    phi_ab = 2.0 * math.pi * getattr(scenario, "ab_flux", 0.0)
    phi_dyn = _phi_dyn_closed_form(scenario, theta, az)
    phi_geo = math.pi * (1.0 - math.cos(theta))
    return FluxLedger(t=float(t), phi_ab=phi_ab, phi_dyn_ac=phi_dyn,
                      phi_geo=phi_geo)


def _diff_same_stencil(ts: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """d/dt with centered interior points and second-order one-sided ends."""
    ys = np.asarray(ys, dtype=float)
    dt = ts[1] - ts[0]
    out = np.empty_like(ys)
    out[1:-1] = (ys[2:] - ys[:-2]) / (2.0 * dt)
    out[0] = (-3.0 * ys[0] + 4.0 * ys[1] - ys[2]) / (2.0 * dt)
    out[-1] = (3.0 * ys[-1] - 4.0 * ys[-2] + ys[-3]) / (2.0 * dt)
    return out


def faraday_compare(scenario, drive: DriveProtocol, branch: str = "+",
                    n_t: int = 65, n_ring: int = 512,
                    n_steps: int = 2048) -> MotiveForceReport:
    """Compare force-route and flux-route emfs along a drive.

    At each sample time the driven parameter is frozen, the synchronous
    cone recomputed, and both routes evaluated quasi-statically.  The
    geometric ledger entry comes from the quantum propagator at each
    sample (shifted by a constant 2*pi when the lower branch makes the
    transport convention land there), so the comparison really does pit
    an independently computed flux against the force integral.
    """
    if n_t < 5:
        raise ValueError("n_t must be >= 5 for the difference stencil")
    ts = np.linspace(drive.t_start, drive.t_end, int(n_t))
    phi_ab = np.empty(len(ts))
    phi_dyn = np.empty(len(ts))
    phi_geo = np.empty(len(ts))
    line = np.empty(len(ts))
    for i, t in enumerate(ts):
        scen_t = with_drive_value(scenario, drive, float(t))
        sol = cone_solution(scen_t, branch)
        theta, az = _branch_cone(sol)
        phi_ab[i] = 2.0 * math.pi * getattr(scen_t, "ab_flux", 0.0)
        phi_dyn[i] = _phi_dyn_closed_form(scen_t, theta, az)
        dec = decompose_phases(propagate(scen_t, n_steps=n_steps, branch=branch))
        geo = -dec.geometric
        # land on the half-solid-angle representative pi*(1 - cos theta)
        target = math.pi * (1.0 - math.cos(theta))
        geo += 2.0 * math.pi * round((target - geo) / (2.0 * math.pi))
        phi_geo[i] = geo
        line[i] = line_integral_aeff(cone_sampler(sol), scen_t, n=n_ring)

    eps_ab = -_diff_same_stencil(ts, phi_ab)
    eps_dyn = -_diff_same_stencil(ts, phi_dyn)
    eps_geo = -_diff_same_stencil(ts, phi_geo)
    eps_flux = -_diff_same_stencil(ts, phi_ab + phi_dyn + phi_geo)
    eps_force = -_diff_same_stencil(ts, line + phi_ab)
    diff = float(np.max(np.abs(eps_force - eps_flux)))
    scale = float(np.max(np.abs(eps_flux)))
    return MotiveForceReport(ts=ts, eps_force=eps_force, eps_flux=eps_flux,
                             phi_ab=phi_ab, phi_dyn_ac=phi_dyn, phi_geo=phi_geo,
                             eps_ab_term=eps_ab, eps_dyn_term=eps_dyn,
                             eps_geo_term=eps_geo, max_abs_diff=diff,
                             max_abs_flux=scale,
                             relative=diff / scale if scale > 0.0 else math.inf,
                             boundary_one_sided=True, branch=branch,
                             n_ring=int(n_ring), n_steps=int(n_steps))


def ryu_motive_force(scenario, drive: DriveProtocol, ts, branch: str = "+") -> np.ndarray:
    """Emf from the moment-cross-E ledger entry alone, -d Phi_dyn / dt.

    Uses the same closed-form series and difference stencil as
    faraday_compare, so against that report it satisfies
    eps_ryu = eps_flux - eps_geo_term - eps_ab_term identically.
    """
    ts = np.asarray(ts, dtype=float)
    if len(ts) < 5:
        raise ValueError("need at least 5 samples for the difference stencil")
    phi_dyn = np.empty(len(ts))
    for i, t in enumerate(ts):
        scen_t = with_drive_value(scenario, drive, float(t))
        sol = cone_solution(scen_t, branch)
        theta, az = _branch_cone(sol)
        phi_dyn[i] = _phi_dyn_closed_form(scen_t, theta, az)
    return -_diff_same_stencil(ts, phi_dyn)


def stern_si_estimate(b_z: float = 1.0, b_phi_end: float = 1.0,
                      ramp_time: float = 3e-9, hbar_omega: float = 1e-23,
                      radius: float = 1e-6, n_t: int = 201) -> SternSIEstimate:
    """SI emf for ramping the azimuthal field on the magnetic ring.

    Defaults: B_z = 1 T, B_phi ramped linearly 0 -> 1 T, hbar*omega =
    1e-23 J (fast-orbit regime, hbar*omega comparable to mu*B), micron
    ring.  The ramp time sets the scale of the answer and 3 ns lands the
    peak emf at the 1e-7 V scale.  Only the geometric ledger entry moves,
    so eps(t) = -(Phi_0 / 2 pi) * d/dt [pi (1 - cos chi_cone(t))].
    """
    if ramp_time <= 0.0 or hbar_omega <= 0.0 or b_z < 0.0 or radius <= 0.0:
        raise ValueError("ramp parameters must be positive (b_z may be zero)")
    u = UnitSystem.si()
    ts = np.linspace(0.0, float(ramp_time), int(n_t))
    b_phi = b_phi_end * ts / ramp_time
    half_quantum = 0.5 * hbar_omega
    chi = np.arctan2(u.mu * b_phi, u.mu * b_z + half_quantum)
    phi_geo = math.pi * (1.0 - np.cos(chi))
    volts = -(u.flux_quantum / (2.0 * math.pi)) * _diff_same_stencil(ts, phi_geo)
    return SternSIEstimate(ts=ts, volts=volts,
                           volts_peak=float(np.max(np.abs(volts))),
                           hbar_omega=float(hbar_omega),
                           mu_b_z=float(u.mu * b_z), chi_end=float(chi[-1]),
                           ramp_time=float(ramp_time))
