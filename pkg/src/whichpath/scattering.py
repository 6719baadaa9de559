"""Circularly polarized photon scattered by two small particles a distance d apart.

Particle 1 sits at x = -d/2 and particle 2 at x = +d/2; the incident photon is
RCP along z and the screen lies a distance r0 away.  Each particle's scattered
wave is one path; the channel (helicity kept or flipped) fixes the
(sin theta +/- 1) weight.  Which-path marking lives in the particles' state:
when the LCP channel leaves them in |s1> or |s2>, the photon's cross term is
multiplied by <s2|s1>.

All amplitudes are relative to the common prefactor returned by
:func:`scatter_prefactor`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

EPSILON0 = 8.8541878128e-12
DEFAULT_SAMPLES = 2001


class ScatterChannel(enum.Enum):
    PLUS = "+"   # RCP out, helicity kept
    MINUS = "-"  # LCP out, helicity flipped

    @property
    def sign(self) -> int:
        return 1 if self is ScatterChannel.PLUS else -1


@dataclass(frozen=True)
class ScatterGeometry:
    d: float
    lambda0: float
    r0: float
    alpha: float = 1.0

    def __post_init__(self):
        problems = geometry_violations(self.d, self.lambda0, self.r0)
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def k0(self) -> float:
        return 2 * np.pi / self.lambda0

    @property
    def fringe_period(self) -> float:
        return self.lambda0 * self.r0 / self.d


def geometry_violations(d, lambda0, r0) -> list[str]:
    out = []
    if not d > 0:
        out.append(f"d must be > 0 (got {d})")
    if not lambda0 > 0:
        out.append(f"lambda0 must be > 0 (got {lambda0})")
    if not r0 >= 100 * d:
        out.append(f"r0 must be >= 100*d for the far field (got r0={r0}, d={d})")
    return out


@dataclass(frozen=True)
class WhichPathOverlap:
    """<s1|s2> = gamma * exp(i * phase) for the two post-scattering particle states."""

    gamma: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1] (got {self.gamma})")

    @property
    def value(self) -> complex:
        return self.gamma * np.exp(1j * self.phase)

    def marker_states(self) -> tuple[np.ndarray, np.ndarray]:
        """Unit vectors |s1>, |s2> in a 2-d marker space realizing the overlap."""
        s1 = np.array([1.0, 0.0], dtype=complex)
        s2 = np.array([self.value, np.sqrt(1.0 - self.gamma ** 2)], dtype=complex)
        return s1, s2


def channel_overlap(channel: ScatterChannel, flip_overlap: WhichPathOverlap) -> WhichPathOverlap:
    """Marker overlap for a channel: helicity-keeping scattering leaves the pair in |s0>."""
    return WhichPathOverlap(1.0, 0.0) if channel is ScatterChannel.PLUS else flip_overlap


def scatter_prefactor(geom: ScatterGeometry) -> complex:
    k0 = geom.k0
    return geom.alpha * k0 ** 2 * np.exp(1j * k0 * geom.r0) / (4 * np.pi * EPSILON0 * geom.r0)


def _check_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any((theta < 0) | (theta > np.pi)):
        raise ValueError("theta must lie in [0, pi]")
    return theta


def scatter_amplitude(geom: ScatterGeometry, channel: ScatterChannel, theta, x):
    """(sin theta +/- 1) cos(pi d x / (lambda0 r0)), relative to the prefactor."""
    theta = _check_theta(theta)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > geom.r0):
        raise ValueError("|x| must not exceed r0")
    amp = (np.sin(theta) + channel.sign) * np.cos(np.pi * geom.d * x / (geom.lambda0 * geom.r0))
    return amp.astype(complex) if np.ndim(amp) else complex(amp)


def path_phase_difference(geom: ScatterGeometry, theta):
    theta = _check_theta(theta)
    return geom.k0 * geom.d * np.cos(theta)


def theta_at(geom: ScatterGeometry, x):
    """Angle from the particle axis to screen point x."""
    x = np.asarray(x, dtype=float)
    return np.arccos(x / np.hypot(x, geom.r0))


def _sin_theta(geom: ScatterGeometry, x):
    x = np.asarray(x, dtype=float)
    return geom.r0 / np.hypot(x, geom.r0)


def envelope(geom: ScatterGeometry, channel: ScatterChannel, x):
    """(sin theta +/- 1)^2 at screen point x."""
    return (_sin_theta(geom, x) + channel.sign) ** 2


def single_particle_amplitudes(geom: ScatterGeometry, channel: ScatterChannel, x):
    """Per-particle summands (A1, A2); their sum is the two-particle amplitude.

    Path-length differences are kept in the phases and dropped from the 1/r
    factors, so A1 + A2 reproduces the cosine fringe exactly.
    """
    x = np.asarray(x, dtype=float)
    weight = 0.5 * (_sin_theta(geom, x) + channel.sign)
    half = np.pi * geom.d * x / (geom.lambda0 * geom.r0)
    return weight * np.exp(1j * half), weight * np.exp(-1j * half)


def exact_pair_amplitudes(geom: ScatterGeometry, channel: ScatterChannel, x, exact_denominators=True):
    """Per-particle amplitudes using true distances from each particle to (x, r0).

    Normalized so the midpoint distance gives 1/r0 scaling; with
    ``exact_denominators=False`` the 1/r_j factors are replaced by the
    midpoint distance while the phases stay exact.
    """
    x = np.asarray(x, dtype=float)
    weight = 0.5 * (_sin_theta(geom, x) + channel.sign)
    r_mid = np.hypot(x, geom.r0)
    r1 = np.hypot(x + geom.d / 2, geom.r0)
    r2 = np.hypot(x - geom.d / 2, geom.r0)
    k0 = geom.k0
    out = []
    for r in (r1, r2):
        denom = r if exact_denominators else r_mid
        out.append(weight * np.exp(1j * k0 * (r - r_mid)) * r_mid / denom)
    return out[0], out[1]


def entangled_state(overlap: WhichPathOverlap) -> np.ndarray:
    """(|s1>|1>_1|0>_2 + |s2>|0>_1|1>_2)/sqrt(2) as a 2x2 array [marker, path]."""
    s1, s2 = overlap.marker_states()
    psi = np.stack([s1, s2], axis=1) / np.sqrt(2)
    return psi / np.linalg.norm(psi)


def photon_density_matrix(overlap: WhichPathOverlap) -> np.ndarray:
    """Path-space density matrix after tracing out the particle pair."""
    psi = entangled_state(overlap)
    return np.einsum("mj,mk->jk", psi, psi.conj())


def detection_probability(geom: ScatterGeometry, channel: ScatterChannel, x,
                          overlap: WhichPathOverlap):
    """Photodetection probability at screen point(s) x, relative to |prefactor|^2.

    Path |j> is detected at x with amplitude sqrt(2) * A_j, so an unmarked
    photon (gamma = 1, phase 0) gives |A1 + A2|^2, the modulus squared of the
    two-particle amplitude.
    """
    rho = photon_density_matrix(overlap)
    a1, a2 = single_particle_amplitudes(geom, channel, x)
    amps = np.sqrt(2) * np.stack([a1, a2], axis=-1)
    p = np.real(np.einsum("...j,jk,...k->...", amps, rho, amps.conj()))
    return float(p) if np.ndim(p) == 0 else p


@dataclass(frozen=True, eq=False)
class ScatterPattern:
    xs: np.ndarray
    probability: np.ndarray
    envelope: np.ndarray


def screen_pattern(geom: ScatterGeometry, channel: ScatterChannel, overlap: WhichPathOverlap,
                   n: int = DEFAULT_SAMPLES, x_max: float | None = None) -> ScatterPattern:
    if x_max is None:
        x_max = 5 * geom.fringe_period
    if n < 2 or not x_max > 0 or x_max > geom.r0:
        raise ValueError("need n >= 2 and 0 < x_max <= r0")
    xs = np.linspace(-x_max, x_max, n)
    return ScatterPattern(xs, detection_probability(geom, channel, xs, overlap),
                          envelope(geom, channel, xs))


def pattern_visibility(pattern: ScatterPattern, floor: float = 1e-12) -> float:
    """Visibility of the envelope-normalized detection probability."""
    env = pattern.envelope
    keep = env > floor * env.max()
    if not np.any(keep):
        return 0.0
    q = pattern.probability[keep] / env[keep]
    hi, lo = q.max(), q.min()
    if hi <= 0:
        return 0.0
    return float((hi - lo) / (hi + lo))


def angular_momentum_transfer(channel: ScatterChannel, hbar: float = 1.0) -> float:
    """Spin handed to the scattering particle by an incident RCP photon."""
    return 0.0 if channel is ScatterChannel.PLUS else 2.0 * hbar
