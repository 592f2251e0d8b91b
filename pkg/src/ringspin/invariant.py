"""Closed-form invariant cones and the analytic phase budget.

A spin carried once around any of the ring scenarios sees a generator that
is covariant under rotations about z.  Passing to the co-rotating frame
turns the transport equation into a constant-axis problem: the cyclic
states are the eigenstates of a fixed vector g, and on the way back to the
lab frame they trace a cone.  Everything analytic lives here: the cone
angle, its eigenspinors, the residual of the invariance equation, and the
dynamical/geometric phase split those cones imply.

Conventions.  The cone angle stored on InvariantSolution is always the
upper ("+") cone; the lower branch sits antipodally at pi - beta with
azimuth shifted by pi.  Unwrapped geometric phases follow the transport
convention in which the "+" branch accumulates (cos(beta) - 1) * pi per
loop; the familiar pi * (1 +/- cos) values are the same numbers mod 2*pi.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import (ACRingScenario, CombinedScenario, SternScenario,
                     cone_axis)

# |denominator| below this counts as the resonance-like limiting case
_LIMITING_EPS = 1e-12


@dataclass(frozen=True)
class InvariantSolution:
    """Cone data for one scenario.

    beta      polar angle of the upper invariant cone, in [0, pi]
    azimuth   constant azimuth offset of the cone axis relative to the
              orbit angle (0 for the electric ring, pi/2 for the magnetic one)
    beta_alt  companion angle from the sign-flipped closed form that
              circulates for these rings (tan(beta) = E sin(chi) /
              (E cos(chi) - 2) for the electric ring, and the full
              rather than half frame quantum for the magnetic one).
              It does not satisfy the invariance equation; it is kept so
              reports can state the discrepancy instead of hiding it.
    limiting  True when the closed-form denominator vanished and beta was
              pinned at pi/2 as the limiting value
    """

    kind: str
    beta: float
    branch: str = "+"
    azimuth: float = 0.0
    beta_alt: float | None = None
    limiting: bool = False
    scenario: object = None

    @property
    def sign(self) -> float:
        return +1.0 if self.branch == "+" else -1.0


@dataclass(frozen=True)
class AnalyticPhases:
    """Per-loop phase budget carried by a cyclic state."""

    kind: str
    branch: str
    cone_angle: float
    dynamical: float
    geometric: float          # unwrapped, transport convention
    geometric_mod: float      # principal value in (-pi, pi]
    total: float
    dynamical_alt: float | None = None
    notes: tuple = ()


def _check_branch(branch: str):
    if branch not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")


def _generator_vector(scenario):
    """Rotating-frame axis g, effective rate, and kind tag.

    Returns (g, omega, kind) where the cyclic states are eigenstates of
    g . sigma in the co-rotating frame.  For the electric ring transport
    is parametrized by the orbit angle itself, so omega = 1.
    """
    if isinstance(scenario, ACRingScenario):
        a = scenario.alpha
        chi = scenario.chi_tilt
        g = np.array([2.0 * a * np.sin(chi), 0.0, 2.0 * a * np.cos(chi) + 0.5])
        return g, 1.0, "ac_ring"
    if isinstance(scenario, SternScenario):
        w = scenario.omega
        g = np.array([0.0, scenario.b_phi, scenario.b_z + 0.5 * w])
        return g, w, "stern"
    if isinstance(scenario, CombinedScenario):
        a, chi, w = scenario.alpha, scenario.chi_tilt, scenario.omega
        g = np.array([2.0 * a * w * np.sin(chi),
                      scenario.b_phi,
                      2.0 * a * w * np.cos(chi) + scenario.b_z + 0.5 * w])
        return g, w, "combined"
    raise TypeError(f"unsupported scenario type {type(scenario).__name__}")


def _cone_from_vector(g) -> tuple[float, float, bool]:
    """(polar, azimuth, degenerate) of a rotating-frame axis."""
    rho = float(np.hypot(g[0], g[1]))
    if rho == 0.0 and g[2] == 0.0:
        return 0.0, 0.0, True
    beta = float(np.arctan2(rho, g[2]))
    azim = float(np.arctan2(g[1], g[0])) if rho > 0.0 else 0.0
    return beta, azim, False


def solve_beta(scenario: ACRingScenario, branch: str = "+") -> InvariantSolution:
    """Invariant cone of the tilted electric ring.

    Solves tan(beta) = 4 alpha sin(chi) / (1 + 4 alpha cos(chi)) on the
    branch beta in [0, pi].  When the denominator vanishes the cone sits
    at exactly pi/2 and the solution is flagged as limiting; when both
    numerator and denominator vanish (alpha = 1/4, chi = pi) no direction
    is preferred and a ValueError is raised.
    """
    _check_branch(branch)
    g, _, _ = _generator_vector(scenario)
    beta, azim, degenerate = _cone_from_vector(g)
    if degenerate:
        raise ValueError(
            "invariant cone is undefined: alpha and chi sit at the fully "
            "degenerate point (4*alpha*cos(chi) = -1 with sin(chi) = 0)")
    limiting = abs(g[2]) <= _LIMITING_EPS * max(1.0, 4.0 * scenario.alpha)
    if limiting:
        beta = np.pi / 2.0

    # companion closed form with the frame term on the other side; kept for
    # diagnostics only, its invariance residual is O(1)
    a, chi = scenario.alpha, scenario.chi_tilt
    den_alt = a * np.cos(chi) - 1.0
    num_alt = a * np.sin(chi)
    beta_alt = float(np.arctan2(num_alt, den_alt)) if (num_alt, den_alt) != (0.0, 0.0) else 0.0
    if beta_alt < 0.0:
        beta_alt += np.pi  # fold to [0, pi] like the principal solution

    return InvariantSolution(kind="ac_ring", beta=beta, branch=branch,
                             azimuth=azim, beta_alt=beta_alt,
                             limiting=limiting, scenario=scenario)


def stern_cone(scenario: SternScenario) -> InvariantSolution:
    """Invariant cone of the magnetic ring.

    tan(chi_cone) = mu B_phi / (mu B_z + hbar omega / 2); the companion
    value beta_alt uses the full quantum hbar*omega in the denominator.
    """
    g, _, _ = _generator_vector(scenario)
    beta, azim, degenerate = _cone_from_vector(g)
    if degenerate:
        raise ValueError("invariant cone is undefined: all fields vanish")
    alt = float(np.arctan2(scenario.b_phi, scenario.b_z + scenario.omega))
    return InvariantSolution(kind="stern", beta=beta, branch="+",
                             azimuth=azim, beta_alt=alt, scenario=scenario)


def combined_cone(scenario: CombinedScenario, branch: str = "+") -> InvariantSolution:
    """Invariant cone when the electric and magnetic rings are superposed."""
    _check_branch(branch)
    g, _, _ = _generator_vector(scenario)
    beta, azim, degenerate = _cone_from_vector(g)
    if degenerate:
        raise ValueError("invariant cone is undefined: rotating-frame axis vanishes")
    return InvariantSolution(kind="combined", beta=beta, branch=branch,
                             azimuth=azim, scenario=scenario)


def cone_solution(scenario, branch: str = "+") -> InvariantSolution:
    """Dispatch to the scenario's cone solver."""
    if isinstance(scenario, ACRingScenario):
        sol = solve_beta(scenario, branch)
    elif isinstance(scenario, SternScenario):
        sol = stern_cone(scenario)
        if branch != sol.branch:
            _check_branch(branch)
            sol = InvariantSolution(kind=sol.kind, beta=sol.beta, branch=branch,
                                    azimuth=sol.azimuth, beta_alt=sol.beta_alt,
                                    limiting=sol.limiting, scenario=scenario)
    elif isinstance(scenario, CombinedScenario):
        sol = combined_cone(scenario, branch)
    else:
        raise TypeError(f"unsupported scenario type {type(scenario).__name__}")
    return sol


def eigenspinor(solution: InvariantSolution, phi: float) -> np.ndarray:
    """Cyclic eigenspinor of the invariant at orbit angle phi.

    "+" branch: (cos(beta/2), e^{i(phi+azimuth)} sin(beta/2)); the "-"
    branch is its orthogonal complement (antipodal cone).
    """
    b2 = 0.5 * solution.beta
    ph = np.exp(1.0j * (float(phi) + solution.azimuth))
    if solution.branch == "+":
        return np.array([np.cos(b2), ph * np.sin(b2)], dtype=complex)
    return np.array([-np.conj(ph) * np.sin(b2), np.cos(b2)], dtype=complex)


def stern_eigenspinor(scenario: SternScenario, phi: float, branch: str = "+") -> np.ndarray:
    """Single-valued cyclic spinor of the magnetic ring at orbit angle phi.

    This is the section with the winding pulled into the upper component:
    (e^{-i phi} cos(chi_c/2), i sin(chi_c/2)) for the "+" branch.  It is
    the same ray as eigenspinor(stern_cone(scenario), phi) up to a global
    e^{-i phi}; the orbital factor e^{i n phi} is not included here.
    """
    _check_branch(branch)
    chi = stern_cone(scenario).beta
    c, s = np.cos(0.5 * chi), np.sin(0.5 * chi)
    ph = np.exp(-1.0j * float(phi))
    if branch == "+":
        return np.array([ph * c, 1.0j * s], dtype=complex)
    return np.array([1.0j * s * ph, c], dtype=complex)


def stern_geometric_phase(chi_cone: float, branch: str = "+") -> float:
    """Per-loop geometric phase magnitude pi * (1 +/- cos chi_cone).

    These are the mod-2*pi representatives; the unwrapped transport values
    are (cos chi_cone - 1) * pi on "+" and its negative on "-".
    """
    _check_branch(branch)
    s = +1.0 if branch == "+" else -1.0
    return float(np.pi * (1.0 + s * np.cos(chi_cone)))


def liouville_residual(solution: InvariantSolution, n_phi: int = 181,
                       cone_angle: float | None = None) -> float:
    """Max Frobenius norm of i dI/dphi + [I, G] over an orbit-angle grid.

    I(phi) is the cone-axis operator m(phi).sigma built from the solution
    (or from cone_angle when given, which lets callers score the companion
    closed form), G the transport generator.  The derivative of I is taken
    analytically; the finite-difference cross-check lives in the tests.
    For a 2x2 traceless residual r.sigma the Frobenius norm is
    sqrt(2)*|r|, which is how it is evaluated.
    """
    beta = solution.beta if cone_angle is None else float(cone_angle)
    g, omega, _ = _generator_vector(solution.scenario)
    phis = np.linspace(0.0, 2.0 * np.pi, int(n_phi), endpoint=False)
    sb, cb = np.sin(beta), np.cos(beta)
    az = phis + solution.azimuth
    m = np.stack([np.cos(az) * sb, np.sin(az) * sb,
                  np.full_like(phis, cb)], axis=-1)
    dm = np.stack([-np.sin(az) * sb, np.cos(az) * sb,
                   np.zeros_like(phis)], axis=-1)
    # lab-frame generator axis h(phi): rotate g's transverse part with phi
    # and remove the frame piece omega/2 * z
    hvec = np.stack([
        np.cos(phis) * g[0] - np.sin(phis) * g[1],
        np.sin(phis) * g[0] + np.cos(phis) * g[1],
        np.full_like(phis, g[2] - 0.5 * omega),
    ], axis=-1)
    # i dI/dt + [I, H] with H = -(h.sigma): vector part omega*dm + 2 m x (-h)
    v = omega * dm - 2.0 * np.cross(m, hvec)
    return float(np.sqrt(2.0) * np.max(np.linalg.norm(v, axis=-1)))


def _phases_from_cone(kind: str, branch: str, beta: float, gnorm: float,
                      omega: float, dynamical_alt=None, notes=()) -> AnalyticPhases:
    s = +1.0 if branch == "+" else -1.0
    period = 2.0 * np.pi / omega
    dyn = s * (gnorm - 0.5 * omega * np.cos(beta)) * period
    geo = s * (np.cos(beta) - 1.0) * np.pi
    geo_mod = float(np.angle(np.exp(1.0j * geo)))
    return AnalyticPhases(kind=kind, branch=branch, cone_angle=beta,
                          dynamical=float(dyn), geometric=float(geo),
                          geometric_mod=geo_mod, total=float(dyn + geo),
                          dynamical_alt=dynamical_alt, notes=tuple(notes))


def analytic_phases_ac(scenario: ACRingScenario, branch: str = "+") -> AnalyticPhases:
    """Per-loop phases of the electric ring's cyclic states.

    dynamical = +/- 4 pi alpha cos(chi - beta); the half-sized companion
    2 pi alpha cos(chi - beta) that appears alongside the sign-flipped
    cone relation is reported as dynamical_alt.  The static ab_flux phase
    is bookkept by the flux ledger, not here.
    """
    _check_branch(branch)
    sol = solve_beta(scenario, branch)
    g, omega, _ = _generator_vector(scenario)
    s = +1.0 if branch == "+" else -1.0
    alt = s * 2.0 * np.pi * scenario.alpha * np.cos(scenario.chi_tilt - sol.beta)
    notes = ("dynamical equals 4*pi*alpha*cos(chi - beta) per loop; "
             "dynamical_alt is the half-sized companion value",)
    ph = _phases_from_cone("ac_ring", branch, sol.beta,
                           float(np.linalg.norm(g)), omega,
                           dynamical_alt=float(alt), notes=notes)
    return ph


def analytic_phases_stern(scenario: SternScenario, branch: str = "+") -> AnalyticPhases:
    """Per-period phases of the magnetic ring's cyclic states."""
    _check_branch(branch)
    sol = stern_cone(scenario)
    g, omega, _ = _generator_vector(scenario)
    notes = ("geometric_mod is pi*(1 +/- cos chi_cone) folded to (-pi, pi]",)
    return _phases_from_cone("stern", branch, sol.beta,
                             float(np.linalg.norm(g)), omega, notes=notes)


def analytic_phases_combined(scenario: CombinedScenario, branch: str = "+") -> AnalyticPhases:
    """Per-period phases with both rings active."""
    _check_branch(branch)
    sol = combined_cone(scenario, branch)
    g, omega, _ = _generator_vector(scenario)
    return _phases_from_cone("combined", branch, sol.beta,
                             float(np.linalg.norm(g)), omega)


def analytic_phases(scenario, branch: str = "+") -> AnalyticPhases:
    """Dispatch to the scenario's analytic phase budget."""
    if isinstance(scenario, ACRingScenario):
        return analytic_phases_ac(scenario, branch)
    if isinstance(scenario, SternScenario):
        return analytic_phases_stern(scenario, branch)
    if isinstance(scenario, CombinedScenario):
        return analytic_phases_combined(scenario, branch)
    raise TypeError(f"unsupported scenario type {type(scenario).__name__}")
