"""Single-photon path states in Mach-Zehnder and Sagnac networks.

A photon is held as a set of labelled branches (complex amplitude, propagation
phase, Jones vector).  Recombination at a splitter gives port probabilities
with a cross term scaled by the overlap of the two wavepacket envelopes, so
polarization marking and path mismatch both show up as lost visibility.

Conventions: beamsplitter t = 1/sqrt(2), r = i/sqrt(2); the photon enters
mode 0; the Mach-Zehnder phase is applied to the mode-0 (retroreflector) arm,
and with no marking port 2 is bright at zero phase (p1 = sin^2(phase/2)).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import jones
from .jones import JonesMatrix, JonesVector

SPEED_OF_LIGHT = 2.99792458e14  # micrometers per second
PROB_TOL = 1e-12
DEFAULT_PHASE_SAMPLES = 16


class HandednessMismatchWarning(UserWarning):
    """The two arms reach the recombining splitter with different circular handedness."""


@dataclass(frozen=True)
class Branch:
    label: str
    amp: complex
    phase: float = 0.0
    pol: JonesVector = field(default_factory=JonesVector.x)

    def field(self) -> np.ndarray:
        return self.amp * np.exp(1j * self.phase) * self.pol.array

    def probability(self) -> float:
        return abs(self.amp) ** 2 * self.pol.norm2()


@dataclass(frozen=True)
class PathState:
    branches: tuple[Branch, ...]

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        labels = [b.label for b in self.branches]
        if len(set(labels)) != len(labels):
            raise ValueError(f"branch labels must be unique: {labels}")
        total = self.probability()
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"path state must carry unit probability (got {total!r})")

    @classmethod
    def single(cls, label: str, pol: JonesVector | None = None) -> "PathState":
        return cls((Branch(label, 1.0 + 0j, 0.0, pol or JonesVector.x()),))

    def probability(self) -> float:
        return float(sum(b.probability() for b in self.branches))

    def __getitem__(self, label: str) -> Branch:
        for b in self.branches:
            if b.label == label:
                return b
        raise KeyError(label)

    def _swap(self, label: str, new: Branch) -> "PathState":
        self[label]
        return PathState(tuple(new if b.label == label else b for b in self.branches))

    def through(self, label: str, element: JonesMatrix) -> "PathState":
        b = self[label]
        return self._swap(label, replace(b, pol=element @ b.pol))

    def advance(self, label: str, phase: float) -> "PathState":
        b = self[label]
        return self._swap(label, replace(b, phase=b.phase + phase))

    def split(self, label: str, outputs: tuple[str, str]) -> "PathState":
        """Send branch ``label`` into input mode 0 of a beamsplitter."""
        b = self[label]
        bs = beamsplitter()
        new = [Branch(outputs[0], b.amp * bs[0, 0], b.phase, b.pol),
               Branch(outputs[1], b.amp * bs[1, 0], b.phase, b.pol)]
        rest = [x for x in self.branches if x.label != label]
        return PathState(tuple(rest + new))


def beamsplitter() -> np.ndarray:
    """Symmetric lossless 50/50 splitter acting on (mode 0, mode 1) amplitudes."""
    t, r = 1 / np.sqrt(2), 1j / np.sqrt(2)
    return np.array([[t, r], [r, t]], dtype=complex)


def _port_probabilities(field0, field1, coherence=1.0):
    """Detection probabilities at both outputs when ``field0``/``field1`` enter modes 0/1.

    Fields have shape (..., 2).  ``coherence`` scales the cross term (overlap of
    the wavepacket envelopes); the direct terms are untouched.
    """
    bs = beamsplitter()
    out = []
    for k in range(2):
        c0 = bs[k, 0] * field0
        c1 = bs[k, 1] * field1
        direct = np.sum(np.abs(c0) ** 2 + np.abs(c1) ** 2, axis=-1)
        cross = 2 * np.real(np.sum(c1.conj() * c0, axis=-1))
        out.append(direct + coherence * cross)
    return out[0], out[1]


def recombine(state: PathState, mode0: str, mode1: str, coherence: float = 1.0,
              extra_phase=0.0):
    """Port probabilities after the two branches meet at a splitter.

    ``extra_phase`` (scalar or array) is added to the ``mode0`` branch and is
    broadcast, which is how phase sweeps and Monte-Carlo draws are evaluated.
    """
    extra = np.asarray(extra_phase, dtype=float)[..., None]
    f0 = state[mode0].field() * np.exp(1j * extra)
    f1 = np.broadcast_to(state[mode1].field(), f0.shape)
    return _port_probabilities(f0, f1, coherence)


@dataclass(frozen=True)
class MzConfig:
    phase_diff: float = 0.0
    with_qwps: bool = False
    qwp_angles: tuple[float, float] = (np.pi / 4, np.pi / 4)
    envelope_overlap: float = 1.0
    incident: JonesVector = field(default_factory=JonesVector.x)

    def __post_init__(self):
        if not np.isfinite(self.phase_diff):
            raise ValueError("phase_diff must be finite")
        if not 0.0 <= self.envelope_overlap <= 1.0:
            raise ValueError(f"envelope_overlap must lie in [0, 1] (got {self.envelope_overlap})")


def mz_arms(cfg: MzConfig) -> PathState:
    """Propagate up to (not through) the second splitter.

    Mode 0 is the retroreflector arm, mode 1 the mirror arm; each arm holds an
    optional QWP followed by one handedness-flipping reflection.
    """
    state = PathState.single("in", cfg.incident).split("in", ("lower", "upper"))
    for label, angle in zip(("lower", "upper"), cfg.qwp_angles):
        if cfg.with_qwps:
            state = state.through(label, jones.qwp(angle))
        state = state.through(label, jones.mirror())
    return state.advance("lower", cfg.phase_diff)


def _check_handedness(state: PathState):
    a, b = state["lower"].pol, state["upper"].pol
    if abs(jones.spin_z(a) - jones.spin_z(b)) > 1e-9:
        warnings.warn(
            f"arms carry different spin ({jones.spin_z(a):+.3f} vs {jones.spin_z(b):+.3f} hbar); "
            "the photon's polarization marks its path",
            HandednessMismatchWarning, stacklevel=3)


def mz_output(cfg: MzConfig) -> tuple[float, float]:
    state = mz_arms(cfg)
    if cfg.with_qwps:
        _check_handedness(state)
    p1, p2 = recombine(state, "lower", "upper", cfg.envelope_overlap)
    return float(p1), float(p2)


def sweep_phases(n: int = DEFAULT_PHASE_SAMPLES) -> np.ndarray:
    return 2 * np.pi * np.arange(n) / n


def harmonic_visibility(probs) -> tuple[float, float]:
    """Visibility of a sinusoidal fringe sampled on a uniform full-period phase grid.

    ``probs`` has shape (n_draws, n_phase) or (n_phase,).  The fringe is read
    from its first Fourier harmonic, which equals (max - min)/(max + min) for
    a pure sinusoid and is immune to where the grid points fall.  Returns the
    visibility of the draw-averaged fringe and its Monte-Carlo standard error
    (zero for a single row).
    """
    p = np.atleast_2d(np.asarray(probs, dtype=float))
    phases = sweep_phases(p.shape[1])
    c0 = p.mean(axis=1)
    c1 = (p * np.exp(-1j * phases)).mean(axis=1)
    m0, m1 = c0.mean(), c1.mean()
    if m0 <= 0:
        return 0.0, 0.0
    vis = 2 * abs(m1) / m0
    n = p.shape[0]
    if n < 2 or abs(m1) == 0:
        return float(vis), 0.0
    proj = np.real(c1 * np.conj(m1) / abs(m1))
    stderr = 2 * np.std(proj, ddof=1) / np.sqrt(n) / m0
    return float(vis), float(stderr)


def mz_visibility(cfg: MzConfig, n_phase: int = DEFAULT_PHASE_SAMPLES) -> float:
    """Port-1 fringe visibility as the path-length phase is swept over 2*pi."""
    state = mz_arms(replace(cfg, phase_diff=0.0))
    p1, _ = recombine(state, "lower", "upper", cfg.envelope_overlap, sweep_phases(n_phase))
    return harmonic_visibility(p1)[0]


def mirror_jitter_visibility(sigma_x: float, lambda0: float, n_mc: int, seed: int | None = None,
                             n_phase: int = DEFAULT_PHASE_SAMPLES, return_stderr: bool = False):
    """Fringe visibility when the retroreflector position is Gaussian-uncertain.

    A displacement delta lengthens the arm by 2*delta, adding phase 2*k*delta.
    """
    if sigma_x < 0:
        raise ValueError(f"sigma_x must be >= 0 (got {sigma_x})")
    if n_mc < 1:
        raise ValueError(f"n_mc must be >= 1 (got {n_mc})")
    k = 2 * np.pi / lambda0
    rng = np.random.default_rng(seed)
    delta = rng.normal(0.0, sigma_x, size=n_mc)
    state = mz_arms(MzConfig())
    phases = sweep_phases(n_phase)[None, :] + 2 * k * delta[:, None]
    p1, _ = recombine(state, "lower", "upper", 1.0, phases)
    vis, err = harmonic_visibility(p1)
    return (vis, err) if return_stderr else vis


def _qwp_stack(angles: np.ndarray) -> np.ndarray:
    c, s = np.cos(angles), np.sin(angles)
    i = 1j
    # R(-a) diag(1, i) R(a), written out elementwise
    m = np.empty(angles.shape + (2, 2), dtype=complex)
    m[..., 0, 0] = c * c + i * s * s
    m[..., 0, 1] = c * s * (1 - i)
    m[..., 1, 0] = c * s * (1 - i)
    m[..., 1, 1] = s * s + i * c * c
    return m


def qwp_jitter_visibility(delta_phi: float, n_mc: int, seed: int | None = None,
                          nominal: tuple[float, float] = (np.pi / 4, np.pi / 4),
                          n_phase: int = DEFAULT_PHASE_SAMPLES, return_stderr: bool = False):
    """Fringe visibility when both arm QWP orientations are Gaussian-uncertain.

    Each draw sets both plate angles to ``nominal + N(0, delta_phi^2)``; the
    returned value is the visibility of the draw-averaged port-1 fringe.
    """
    if delta_phi < 0:
        raise ValueError(f"delta_phi must be >= 0 (got {delta_phi})")
    if n_mc < 1:
        raise ValueError(f"n_mc must be >= 1 (got {n_mc})")
    rng = np.random.default_rng(seed)
    angles = np.asarray(nominal)[None, :] + rng.normal(0.0, delta_phi, size=(n_mc, 2))
    arms = mz_arms(MzConfig())  # amplitudes and mirror flips; plates inserted below
    x = MzConfig().incident.array
    mirror = jones.mirror().m
    f0 = arms["lower"].amp * (mirror @ (_qwp_stack(angles[:, 0]) @ x)[..., None])[..., 0]
    f1 = arms["upper"].amp * (mirror @ (_qwp_stack(angles[:, 1]) @ x)[..., None])[..., 0]
    phases = sweep_phases(n_phase)
    f0 = f0[:, None, :] * np.exp(1j * phases)[None, :, None]
    f1 = np.broadcast_to(f1[:, None, :], f0.shape)
    p1, _ = _port_probabilities(f0, f1)
    vis, err = harmonic_visibility(p1)
    return (vis, err) if return_stderr else vis


def angular_uncertainty_product(delta_L: float, delta_phi: float, hbar: float = 1.0) -> bool:
    """Heuristic gate (Delta L_z)(Delta phi) >= hbar/2 for a rotating wave plate."""
    if delta_L < 0 or delta_phi < 0:
        raise ValueError("uncertainties must be >= 0")
    return delta_L * delta_phi >= hbar / 2 * (1 - 1e-12)


def min_orientation_spread(delta_L: float, hbar: float = 1.0) -> float:
    """Smallest plate-angle spread compatible with a known angular momentum spread."""
    if delta_L <= 0:
        return np.inf
    return hbar / (2 * delta_L)


def track_angular_product(delta_p_phi: float, radius: float, delta_phi: float) -> tuple[float, float]:
    """Particle on a circular track: returns (dp * R dphi, dL * dphi) with dL = R dp."""
    return delta_p_phi * (radius * delta_phi), (radius * delta_p_phi) * delta_phi


def disk_angular_product(L_z: float, delta_L: float, inertia: float, delta_t: float) -> tuple[float, float]:
    """Rotating disk: returns (dE * dt, dL * dphi) with dE = L dL / I and dphi = L dt / I."""
    delta_E = L_z * delta_L / inertia
    delta_phi = L_z * delta_t / inertia
    return delta_E * delta_t, delta_L * delta_phi


@dataclass(frozen=True)
class SagnacConfig:
    rotation_phase: float = 0.0
    with_qwps: bool = False

    def __post_init__(self):
        if not np.isfinite(self.rotation_phase):
            raise ValueError("rotation_phase must be finite")


def sagnac_loops(cfg: SagnacConfig, incident: JonesVector | None = None) -> PathState:
    """Both loop directions after one round trip, just before re-entering the splitter.

    The clockwise beam (transmitted first) meets QWP1 (+45 deg), M1, M2, QWP2
    (-45 deg); the counter-clockwise beam meets them in reverse order.  The
    rotation phase is lumped onto the clockwise beam.
    """
    state = PathState.single("in", incident).split("in", ("cw", "ccw"))
    q1, q2 = jones.qwp(np.pi / 4), jones.qwp(-np.pi / 4)
    m = jones.mirror()
    order = {"cw": [q1, m, m, q2], "ccw": [q2, m, m, q1]}
    for label, elements in order.items():
        for el in elements:
            if el is m or cfg.with_qwps:
                state = state.through(label, el)
    return state.advance("cw", cfg.rotation_phase)


def sagnac_output(cfg: SagnacConfig) -> float:
    """Probability that the photon reaches the observation plane.

    The observation port collects the clockwise beam transmitted a second time
    and the counter-clockwise beam reflected a second time.
    """
    p_obs, _ = recombine(sagnac_loops(cfg), "cw", "ccw")
    return float(p_obs)


def wavepacket_duration(delta_omega: float) -> float:
    """Temporal rms width of a minimum-uncertainty Gaussian packet.

    ``delta_omega`` is the full linewidth, taken as twice the spectral rms
    width, so the duration is 1/delta_omega.
    """
    if not delta_omega > 0:
        raise ValueError(f"delta_omega must be > 0 (got {delta_omega})")
    return 1.0 / delta_omega


def wavepacket_length(delta_omega: float) -> float:
    """Spatial rms length in micrometers."""
    return SPEED_OF_LIGHT * wavepacket_duration(delta_omega)


def wavepacket_overlap(delta_omega: float, omega0: float, path_mismatch: float) -> float:
    """Overlap of two identical Gaussian envelopes displaced by ``path_mismatch``.

    With intensity rms length dx the normalized amplitude overlap is
    exp(-mismatch^2 / (8 dx^2)).
    """
    if not omega0 > 0:
        raise ValueError(f"omega0 must be > 0 (got {omega0})")
    if path_mismatch < 0:
        raise ValueError(f"path_mismatch must be >= 0 (got {path_mismatch})")
    dx = wavepacket_length(delta_omega)
    return float(np.exp(-path_mismatch ** 2 / (8 * dx ** 2)))
