"""Field configurations, unit systems, and time-dependent drive protocols.

Two ring geometries are supported, plus their superposition:

* an electric ring: radial-ish electric field tilted by chi off the ring
  plane, so the moving moment sees a conical effective field (the coupling
  strength is the dimensionless alpha = mu*E*a / (2*hbar*c));
* a magnetic ring: uniform axial field B_z plus an azimuthal field B_phi,
  with the spin carried around at angular rate omega.

Internal units set hbar = c = 1, ring radius a = 1, particle mass m = 1/2,
charge e = 1.  Then mu = e*hbar/(2mc) = 1, the moment-to-spin ratio e/mc
is 2, the flux quantum h c / e is 2*pi, and the electric field magnitude
is E = 2*alpha.  SI mode carries CODATA constants for electrons.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pauli import HermitianObservable


@dataclass(frozen=True)
class UnitSystem:
    name: str
    hbar: float
    c: float
    e: float
    mass: float
    mu: float            # magnetic moment magnitude e*hbar/(2m)
    flux_quantum: float  # h/e (SI), 2*pi in internal units

    @staticmethod
    def internal() -> "UnitSystem":
        return UnitSystem(name="internal", hbar=1.0, c=1.0, e=1.0,
                          mass=0.5, mu=1.0, flux_quantum=2.0 * np.pi)

    @staticmethod
    def si() -> "UnitSystem":
        # CODATA 2018 exact/recommended values for the electron
        hbar = 1.054571817e-34
        h = 6.62607015e-34
        e = 1.602176634e-19
        m = 9.1093837015e-31
        return UnitSystem(name="si", hbar=hbar, c=2.99792458e8, e=e,
                          mass=m, mu=e * hbar / (2.0 * m), flux_quantum=h / e)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class ACRingScenario:
    """Tilted electric ring.

    alpha    dimensionless coupling mu*E*a/(2*hbar*c), >= 0
    chi_tilt tilt of the effective conical field axis, in [0, pi]
    radius   ring radius (1 in internal units)
    ab_flux  static magnetic flux through the ring, in flux quanta
    """

    alpha: float
    chi_tilt: float
    radius: float = 1.0
    ab_flux: float = 0.0

    def __post_init__(self):
        _require(self.alpha >= 0.0, f"alpha must be >= 0, got {self.alpha}")
        _require(0.0 <= self.chi_tilt <= np.pi,
                 f"chi_tilt must lie in [0, pi], got {self.chi_tilt}")
        _require(self.radius > 0.0, f"radius must be > 0, got {self.radius}")

    @property
    def e_field(self) -> float:
        """Electric field magnitude in internal units (mu = hbar = c = a = 1)."""
        return 2.0 * self.alpha / self.radius


@dataclass(frozen=True)
class SternScenario:
    """Axial plus azimuthal magnetic ring traversed at angular rate omega.

    Fields are in units of the internal field scale (mu*B is an energy with
    mu = 1).  n is the orbital mode index used by orbital_energy.
    """

    b_phi: float
    b_z: float
    omega: float
    radius: float = 1.0
    n: int = 0

    def __post_init__(self):
        _require(self.b_phi >= 0.0, f"b_phi must be >= 0, got {self.b_phi}")
        _require(self.b_z >= 0.0, f"b_z must be >= 0, got {self.b_z}")
        _require(self.omega > 0.0, f"omega must be > 0, got {self.omega}")
        _require(self.radius > 0.0, f"radius must be > 0, got {self.radius}")
        _require(self.n == int(self.n) and self.n >= 0,
                 f"n must be a nonnegative integer, got {self.n}")


@dataclass(frozen=True)
class CombinedScenario:
    """Electric ring and magnetic ring superposed, traversed at rate omega."""

    alpha: float
    chi_tilt: float
    b_phi: float
    b_z: float
    omega: float
    radius: float = 1.0
    ab_flux: float = 0.0

    def __post_init__(self):
        _require(self.alpha >= 0.0, f"alpha must be >= 0, got {self.alpha}")
        _require(0.0 <= self.chi_tilt <= np.pi,
                 f"chi_tilt must lie in [0, pi], got {self.chi_tilt}")
        _require(self.b_phi >= 0.0, f"b_phi must be >= 0, got {self.b_phi}")
        _require(self.b_z >= 0.0, f"b_z must be >= 0, got {self.b_z}")
        _require(self.omega > 0.0, f"omega must be > 0, got {self.omega}")
        _require(self.radius > 0.0, f"radius must be > 0, got {self.radius}")

    @property
    def e_field(self) -> float:
        return 2.0 * self.alpha / self.radius


def cone_axis(phi, chi) -> np.ndarray:
    """Unit vector(s) (cos phi sin chi, sin phi sin chi, cos chi).

    Accepts scalar or array phi; returns shape (3,) or (n, 3).
    """
    phi = np.asarray(phi, dtype=float)
    s, c = np.sin(chi), np.cos(chi)
    out = np.stack([np.cos(phi) * s, np.sin(phi) * s,
                    np.broadcast_to(c, phi.shape)], axis=-1)
    return out


def electric_field_vector(scenario, phi) -> np.ndarray:
    """E(phi) for an electric ring, in internal units.

    The field is tilted so that (E_hat x phi_hat) traces the cone axis:
    E_hat = cos(chi) r_hat - sin(chi) z_hat, magnitude 2*alpha/a.
    """
    phi = np.asarray(phi, dtype=float)
    e = scenario.e_field
    cc, sc = np.cos(scenario.chi_tilt), np.sin(scenario.chi_tilt)
    return np.stack([e * cc * np.cos(phi), e * cc * np.sin(phi),
                     np.broadcast_to(-e * sc, phi.shape)], axis=-1)


def magnetic_field_vector(scenario, phi) -> np.ndarray:
    """B(phi) = B_phi * phi_hat + B_z * z_hat for magnetic-ring scenarios."""
    phi = np.asarray(phi, dtype=float)
    bphi = getattr(scenario, "b_phi", 0.0)
    bz = getattr(scenario, "b_z", 0.0)
    return np.stack([-bphi * np.sin(phi), bphi * np.cos(phi),
                     np.broadcast_to(bz, phi.shape)], axis=-1)


def b_phi(scenario, phi: float) -> HermitianObservable:
    """Azimuthal component of the spin gauge field, (sigma x E)_phi.

    For the tilted electric ring this is E * (cos phi sin chi,
    sin phi sin chi, cos chi) . sigma with E = 2*alpha in internal units.
    """
    n = cone_axis(float(phi), scenario.chi_tilt)
    e = scenario.e_field * scenario.radius  # = 2*alpha, radius-independent
    return HermitianObservable.from_vector(0.0, e * n)


def b0_stern(scenario: SternScenario, phi: float) -> HermitianObservable:
    """Scalar (time-component) gauge field -sigma.B for the magnetic ring."""
    b = magnetic_field_vector(scenario, float(phi))
    return HermitianObservable.from_vector(0.0, -b)


def orbital_energy(scenario: SternScenario, n: int | None = None) -> float:
    """Orbital kinetic energy of mode n on the magnetic ring.

    The axial field shifts the effective angular momentum the way a flux
    would: E_n = (hbar^2 / 2 m a^2) (n - pi * B_z / 2)^2 in internal units
    (the shift is mu * B_z * (pi a / hbar c) in general).
    """
    if n is None:
        n = scenario.n
    shift = np.pi * scenario.b_z / 2.0
    # hbar^2 / (2 m a^2) = 1 for m = 1/2, a = 1
    scale = 1.0 / scenario.radius ** 2
    return float(scale * (n - shift) ** 2)


@dataclass(frozen=True)
class DriveProtocol:
    """Piecewise-linear ramp of one scenario parameter.

    target  name of the driven parameter: "alpha", "b_phi", or "ab_flux"
    knots   ((t0, v0), (t1, v1), ...) with strictly increasing times
    """

    target: str
    knots: tuple = field(default_factory=tuple)

    _TARGETS = ("alpha", "b_phi", "ab_flux")

    def __post_init__(self):
        _require(self.target in self._TARGETS,
                 f"drive target must be one of {self._TARGETS}, got {self.target!r}")
        kn = tuple((float(t), float(v)) for t, v in self.knots)
        _require(len(kn) >= 2, "drive needs at least two knots")
        ts = [t for t, _ in kn]
        _require(all(b > a for a, b in zip(ts, ts[1:])),
                 "drive knot times must be strictly increasing")
        object.__setattr__(self, "knots", kn)

    @property
    def t_start(self) -> float:
        return self.knots[0][0]

    @property
    def t_end(self) -> float:
        return self.knots[-1][0]


def evaluate_drive(drive: DriveProtocol, t):
    """Drive value at time t (scalar or array), linear between knots.

    Raises ValueError outside [t_start, t_end]; extrapolation would silently
    invent field histories, so it is refused.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < drive.t_start - 1e-12) or np.any(t > drive.t_end + 1e-12):
        raise ValueError(
            f"drive evaluated outside its domain [{drive.t_start}, {drive.t_end}]")
    ts = np.array([k[0] for k in drive.knots])
    vs = np.array([k[1] for k in drive.knots])
    out = np.interp(np.clip(t, drive.t_start, drive.t_end), ts, vs)
    return float(out) if out.ndim == 0 else out


def with_drive_value(scenario, drive: DriveProtocol, t: float):
    """Copy of scenario with the driven parameter set to its value at t."""
    from dataclasses import replace
    value = evaluate_drive(drive, t)
    if not hasattr(scenario, drive.target):
        raise ValueError(
            f"scenario {type(scenario).__name__} has no parameter {drive.target!r}")
    return replace(scenario, **{drive.target: value})
