"""Two-level building blocks: spinors, Pauli observables, exact exponentials.

Spinors are plain complex ndarrays of shape (2,); Bloch vectors are real
ndarrays of shape (3,).  Everything here is closed-form, no approximation:
the exponential of a traceless-plus-scalar Hermitian generator is written
with the half-angle identity, so a single call is exact to rounding.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

# smallest norm we are willing to normalize; below this the direction is noise
_NORM_FLOOR = 1e-150


@dataclass(frozen=True)
class HermitianObservable:
    """Hermitian 2x2 operator c0*I + cx*sx + cy*sy + cz*sz (real coefficients)."""

    c0: float = 0.0
    cx: float = 0.0
    cy: float = 0.0
    cz: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.cx, self.cy, self.cz], dtype=float)

    @property
    def matrix(self) -> np.ndarray:
        return (self.c0 * IDENTITY + self.cx * SIGMA_X
                + self.cy * SIGMA_Y + self.cz * SIGMA_Z)

    @staticmethod
    def from_vector(c0: float, c: np.ndarray) -> "HermitianObservable":
        cx, cy, cz = (float(v) for v in c)
        return HermitianObservable(float(c0), cx, cy, cz)


def normalize(psi) -> np.ndarray:
    """Return psi / ||psi||.  Rejects vectors too small to carry a direction."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2,):
        raise ValueError(f"spinor must have shape (2,), got {psi.shape}")
    n = np.linalg.norm(psi)
    if not np.isfinite(n) or n < _NORM_FLOOR:
        raise ValueError("cannot normalize a zero (or non-finite) spinor")
    return psi / n


def overlap(a, b) -> complex:
    """Inner product <a|b> (conjugate-linear in the first slot)."""
    return complex(np.vdot(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)))


def expectation(obs, psi) -> float:
    """Real expectation value <psi|obs|psi> for a Hermitian obs.

    ``obs`` may be a HermitianObservable or a 2x2 array.  The imaginary
    residue is rounding noise for Hermitian input and is dropped.
    """
    m = obs.matrix if isinstance(obs, HermitianObservable) else np.asarray(obs, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    return float(np.real(np.vdot(psi, m @ psi)))


def bloch(psi) -> np.ndarray:
    """Bloch vector (<sx>, <sy>, <sz>) of a spinor, normalized first."""
    psi = normalize(psi)
    a, b = psi[0], psi[1]
    return np.array([
        2.0 * np.real(np.conj(a) * b),
        2.0 * np.imag(np.conj(a) * b),
        float(np.abs(a) ** 2 - np.abs(b) ** 2),
    ])


def exp_unitary(obs: HermitianObservable, theta: float) -> np.ndarray:
    """exp(-i*theta*(c0*I + c.sigma)) in closed form.

    Uses cos/sin of theta*|c| on the traceless part; exact for any theta,
    which is what makes the midpoint stepper a true unitary integrator.
    """
    theta = float(theta)
    c = obs.vector
    r = float(np.linalg.norm(c))
    phase = np.exp(-1.0j * theta * obs.c0)
    if r == 0.0:
        return phase * IDENTITY
    ang = theta * r
    u = c / r
    sig = u[0] * SIGMA_X + u[1] * SIGMA_Y + u[2] * SIGMA_Z
    return phase * (np.cos(ang) * IDENTITY - 1.0j * np.sin(ang) * sig)


def exp_unitary_batch(c0s: np.ndarray, cs: np.ndarray, thetas) -> np.ndarray:
    """Vectorized exp_unitary: (n,) scalars, (n,3) vectors -> (n,2,2) unitaries.

    Same closed form as exp_unitary, evaluated for a whole parameter grid in
    one shot.  thetas may be scalar or shape (n,).
    """
    c0s = np.asarray(c0s, dtype=float)
    cs = np.asarray(cs, dtype=float)
    n = cs.shape[0]
    thetas = np.broadcast_to(np.asarray(thetas, dtype=float), (n,))
    r = np.linalg.norm(cs, axis=1)
    ang = thetas * r
    cosw = np.cos(ang)
    sinw = np.sin(ang)
    # safe unit vectors; where r == 0 the sin term vanishes anyway
    safe = np.where(r > 0.0, r, 1.0)
    u = cs / safe[:, None]
    out = np.empty((n, 2, 2), dtype=complex)
    out[:, 0, 0] = cosw - 1.0j * sinw * u[:, 2]
    out[:, 1, 1] = cosw + 1.0j * sinw * u[:, 2]
    out[:, 0, 1] = -1.0j * sinw * (u[:, 0] - 1.0j * u[:, 1])
    out[:, 1, 0] = -1.0j * sinw * (u[:, 0] + 1.0j * u[:, 1])
    out *= np.exp(-1.0j * thetas * c0s)[:, None, None]
    return out
