"""Jones calculus for single-photon polarization bookkeeping.

Vectors are (ex, ey) complex amplitudes in the lab x/y basis.  Retarders are
built as ``R(-theta) @ diag(1, exp(i*delta)) @ R(theta)`` so the fast axis
carries zero phase.  Spin is reported in units of hbar (hbar = 1 unless given).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
PHASE_TOL = 1e-10


class NotNormalizedError(ValueError):
    """Raised when an operation requires a unit-norm Jones vector."""


@dataclass(frozen=True)
class JonesVector:
    ex: complex
    ey: complex

    @classmethod
    def from_array(cls, a) -> "JonesVector":
        a = np.asarray(a, dtype=complex).reshape(2)
        return cls(complex(a[0]), complex(a[1]))

    @classmethod
    def linear(cls, angle: float) -> "JonesVector":
        """Linear polarization at ``angle`` radians from the x-axis."""
        return cls(complex(np.cos(angle)), complex(np.sin(angle)))

    @classmethod
    def x(cls) -> "JonesVector":
        return cls(1.0 + 0j, 0j)

    @classmethod
    def y(cls) -> "JonesVector":
        return cls(0j, 1.0 + 0j)

    @classmethod
    def rcp(cls) -> "JonesVector":
        # (x + i y)/sqrt(2): positive helicity, spin +hbar along z
        s = 1 / np.sqrt(2)
        return cls(complex(s), 1j * s)

    @classmethod
    def lcp(cls) -> "JonesVector":
        s = 1 / np.sqrt(2)
        return cls(complex(s), -1j * s)

    @property
    def array(self) -> np.ndarray:
        return np.array([self.ex, self.ey], dtype=complex)

    def norm2(self) -> float:
        return abs(self.ex) ** 2 + abs(self.ey) ** 2

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm2() - 1.0) <= tol

    def normalized(self) -> "JonesVector":
        n = np.sqrt(self.norm2())
        if n == 0:
            raise NotNormalizedError("cannot normalize the zero vector")
        return JonesVector(self.ex / n, self.ey / n)

    def inner(self, other: "JonesVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.array, other.array))


@dataclass(frozen=True, eq=False)
class JonesMatrix:
    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"Jones matrix must be 2x2, got shape {m.shape}")
        object.__setattr__(self, "m", m)

    def __matmul__(self, other):
        if isinstance(other, JonesMatrix):
            return JonesMatrix(self.m @ other.m)
        if isinstance(other, JonesVector):
            return JonesVector.from_array(self.m @ other.array)
        return NotImplemented

    def apply(self, v: JonesVector) -> JonesVector:
        return self @ v

    def is_unitary(self, tol: float = NORM_TOL) -> bool:
        return np.allclose(self.m.conj().T @ self.m, np.eye(2), rtol=0, atol=tol)

    def is_projector(self, tol: float = NORM_TOL) -> bool:
        return (np.allclose(self.m @ self.m, self.m, rtol=0, atol=tol)
                and np.allclose(self.m.conj().T, self.m, rtol=0, atol=tol))


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]], dtype=complex)


def retarder(fast_axis_angle: float, retardance: float) -> JonesMatrix:
    core = np.diag([1.0, np.exp(1j * retardance)])
    return JonesMatrix(rotation(-fast_axis_angle) @ core @ rotation(fast_axis_angle))


def qwp(fast_axis_angle: float) -> JonesMatrix:
    """Quarter-wave plate; slow axis lags the fast axis by pi/2."""
    return retarder(fast_axis_angle, np.pi / 2)


def hwp(fast_axis_angle: float) -> JonesMatrix:
    """Half-wave plate. ``hwp(0)`` flips the sign of E_y and leaves E_x alone."""
    return retarder(fast_axis_angle, np.pi)


def polarizer(pass_axis_angle: float) -> JonesMatrix:
    u = np.array([np.cos(pass_axis_angle), np.sin(pass_axis_angle)], dtype=complex)
    return JonesMatrix(np.outer(u, u.conj()))


def mirror() -> JonesMatrix:
    """Normal-incidence reflection in a fixed lab frame; swaps RCP and LCP."""
    return JonesMatrix(np.diag([1.0, -1.0]))


def spin_z(v: JonesVector, hbar: float = 1.0) -> float:
    """Expected spin angular momentum along the propagation axis."""
    if not v.is_normalized():
        raise NotNormalizedError(f"spin_z needs a normalized vector (norm^2 = {v.norm2()!r})")
    p_r = abs(JonesVector.rcp().inner(v)) ** 2
    p_l = abs(JonesVector.lcp().inner(v)) ** 2
    return hbar * (p_r - p_l)


def equal_up_to_phase(a: JonesVector, b: JonesVector, tol: float = PHASE_TOL) -> bool:
    """True when |<a|b>| equals ||a|| ||b||, i.e. the states differ by a global phase."""
    na, nb = np.sqrt(a.norm2()), np.sqrt(b.norm2())
    return abs(abs(a.inner(b)) - na * nb) <= tol and abs(na - nb) <= tol
