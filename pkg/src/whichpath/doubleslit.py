"""Far-field fringes of a split-plate double slit, with slit inserts and erasers.

Slits of width ``w`` sit at x = -d/2 and x = +d/2; an insert (pi shifter or
birefringent half-wave window) occupies the +d/2 slit.  The far field is the
analytic Fourier transform of the aperture, sampled at sigma_x = x / (lambda0 L).
Lengths are micrometers throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .jones import JonesMatrix, JonesVector, NotNormalizedError, hwp, polarizer

DEFAULT_SAMPLES = 2001
PARAXIAL_LIMIT = 0.2
ENVELOPE_FLOOR = 1e-6


class EvanescentAngleError(ValueError):
    """Spatial frequency maps to |sin(theta)| > 1."""


class UndefinedPolarizationError(ValueError):
    """Local field is zero, so no polarization state exists there."""


@dataclass(frozen=True)
class SlitGeometry:
    w: float
    d: float
    lambda0: float
    L: float

    def __post_init__(self):
        problems = geometry_violations(self.w, self.d, self.lambda0, self.L)
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def fringe_period(self) -> float:
        """Screen distance between adjacent bright fringes, L*lambda/d."""
        return self.L * self.lambda0 / self.d

    def sigma(self, x):
        return np.asarray(x, dtype=float) / (self.lambda0 * self.L)


def geometry_violations(w, d, lambda0, L) -> list[str]:
    out = []
    if not w > 0:
        out.append(f"w must be > 0 (got {w})")
    if not d > w:
        out.append(f"d must exceed w (got d={d}, w={w})")
    if not lambda0 > 0:
        out.append(f"lambda0 must be > 0 (got {lambda0})")
    if not L >= 100 * d:
        out.append(f"L must be >= 100*d for the far field (got L={L}, d={d})")
    return out


class SlitInsert(enum.Enum):
    NONE = "none"
    PI_SHIFTER = "pi"
    BIREFRINGENT_HWP = "hwp"

    def jones(self) -> JonesMatrix:
        """Action of the insert on the field passing the +d/2 slit."""
        if self is SlitInsert.PI_SHIFTER:
            return JonesMatrix(-np.eye(2))
        if self is SlitInsert.BIREFRINGENT_HWP:
            return hwp(0.0)
        return JonesMatrix(np.eye(2))


@dataclass(frozen=True, eq=False)
class ScreenProfile:
    xs: np.ndarray
    ex: np.ndarray
    ey: np.ndarray
    intensity: np.ndarray
    geom: SlitGeometry | None = None

    @classmethod
    def from_fields(cls, xs, ex, ey, geom=None) -> "ScreenProfile":
        ex = np.asarray(ex, dtype=complex)
        ey = np.asarray(ey, dtype=complex)
        return cls(np.asarray(xs, dtype=float), ex, ey, np.abs(ex) ** 2 + np.abs(ey) ** 2, geom)

    def envelope(self) -> np.ndarray | None:
        """Single-slit envelope sinc^2(w sigma_x), or None without geometry."""
        if self.geom is None:
            return None
        return np.sinc(self.geom.w * self.geom.sigma(self.xs)) ** 2


def _slit_terms(geom: SlitGeometry, sigma, offsets=(0.0, 0.0)):
    """Far-field factors of the -d/2 and +d/2 slits, each optionally displaced along x."""
    sigma = np.asarray(sigma, dtype=float)
    if np.any(np.abs(geom.lambda0 * sigma) > 1):
        raise EvanescentAngleError("|lambda0 * sigma_x| > 1 is not a propagating angle")
    single = geom.w * np.sinc(geom.w * sigma)
    d1, d2 = offsets
    left = single * np.exp(1j * np.pi * geom.d * sigma) * np.exp(-2j * np.pi * sigma * d1)
    right = single * np.exp(-1j * np.pi * geom.d * sigma) * np.exp(-2j * np.pi * sigma * d2)
    return left, right


def far_field_amplitude(geom: SlitGeometry, sigma_x, insert: SlitInsert = SlitInsert.NONE):
    """(A_x, A_y) far-field amplitudes per unit incident x- and y-field.

    With no insert both equal ``2 w sinc(w s) cos(pi d s)``; the pi shifter gives
    ``2i w sinc(w s) sin(pi d s)``; the half-wave window gives one of each.
    """
    left, right = _slit_terms(geom, sigma_x)
    t = np.diagonal(insert.jones().m)
    ax = left + t[0] * right
    ay = left + t[1] * right
    if np.ndim(ax) == 0:
        return complex(ax), complex(ay)
    return ax, ay


def _screen_xs(geom: SlitGeometry, n: int, x_max: float | None) -> np.ndarray:
    if x_max is None:
        x_max = 5 * geom.fringe_period
    if n < 2:
        raise ValueError(f"need at least 2 samples (got {n})")
    if not x_max > 0:
        raise ValueError(f"x_max must be > 0 (got {x_max})")
    if x_max / geom.L > PARAXIAL_LIMIT:
        raise ValueError(f"x_max/L = {x_max / geom.L:.3g} exceeds paraxial limit {PARAXIAL_LIMIT}")
    return np.linspace(-x_max, x_max, n)


def _check_incident(incident: JonesVector):
    if not incident.is_normalized():
        raise NotNormalizedError(f"incident polarization must be normalized (norm^2 = {incident.norm2()!r})")


def screen_profile(geom: SlitGeometry, insert: SlitInsert, incident: JonesVector,
                   n: int = DEFAULT_SAMPLES, x_max: float | None = None) -> ScreenProfile:
    _check_incident(incident)
    xs = _screen_xs(geom, n, x_max)
    ax, ay = far_field_amplitude(geom, geom.sigma(xs), insert)
    return ScreenProfile.from_fields(xs, incident.ex * ax, incident.ey * ay, geom)


def apply_eraser(profile: ScreenProfile, pass_axis_angle: float) -> ScreenProfile:
    p = polarizer(pass_axis_angle).m
    fields = p @ np.vstack([profile.ex, profile.ey])
    return ScreenProfile.from_fields(profile.xs, fields[0], fields[1], profile.geom)


def polarization_at(profile: ScreenProfile, x: float) -> JonesVector:
    xs = profile.xs
    if not xs[0] <= x <= xs[-1]:
        raise ValueError(f"x = {x} lies outside the sampled range [{xs[0]}, {xs[-1]}]")
    i = int(np.argmin(np.abs(xs - x)))
    if profile.intensity[i] <= 1e-24 * max(profile.intensity.max(), 1e-300):
        raise UndefinedPolarizationError(f"zero intensity at x = {xs[i]}")
    return JonesVector(complex(profile.ex[i]), complex(profile.ey[i])).normalized()


def visibility(profile: ScreenProfile, window: tuple[float, float] | None = None,
               normalize_envelope: bool = True) -> float:
    """Fringe visibility (Imax - Imin)/(Imax + Imin) inside ``window``.

    When the profile knows its geometry the single-slit envelope is divided
    out first, skipping samples close to envelope zeros.
    """
    xs = profile.xs
    if window is None:
        window = (xs[0], xs[-1])
    lo, hi = window
    eps = 1e-9 * (xs[-1] - xs[0])
    if lo < xs[0] - eps or hi > xs[-1] + eps or lo >= hi:
        raise ValueError(f"window {window} is outside the sampled range [{xs[0]}, {xs[-1]}]")
    mask = (xs >= lo - eps) & (xs <= hi + eps)
    intensity = profile.intensity[mask]
    env = profile.envelope() if normalize_envelope else None
    if env is not None:
        env = env[mask]
        keep = env > ENVELOPE_FLOOR * env.max()
        intensity = intensity[keep] / env[keep]
    if intensity.size == 0:
        raise ValueError("no usable samples in window")
    i_max, i_min = intensity.max(), intensity.min()
    if i_max <= 0:
        return 0.0
    return float(np.clip((i_max - i_min) / (i_max + i_min), 0.0, 1.0))


def fringe_momentum(geom: SlitGeometry, hbar: float = 1.0) -> float:
    """|p_x| of a photon landing on a first-order bright fringe."""
    return 2 * np.pi * hbar / geom.d


def first_order_window(geom: SlitGeometry) -> tuple[float, float]:
    """Screen interval holding the first bright fringe at x = +L lambda/d."""
    p = geom.fringe_period
    return 0.5 * p, 1.5 * p


def blur_attenuation(sigma_x, sigma_plate: float):
    """Mean fringe-term factor for independent Gaussian jitter of both half-plates."""
    return np.exp(-4 * np.pi ** 2 * sigma_plate ** 2 * np.asarray(sigma_x) ** 2)


def bohr_blur(geom: SlitGeometry, insert: SlitInsert, incident: JonesVector,
              sigma_plate: float, n_mc: int, seed: int | None = None,
              n: int = DEFAULT_SAMPLES, x_max: float | None = None,
              window: tuple[float, float] | None = None, chunk: int = 256):
    """Average the screen intensity over random half-plate displacements.

    Each half-plate is shifted along x by an independent N(0, sigma_plate^2)
    draw per photon.  Returns the mean profile and its visibility over
    ``window`` (default: the first-order bright fringe, whose momentum is the
    which-path signal).
    """
    if sigma_plate < 0:
        raise ValueError(f"sigma_plate must be >= 0 (got {sigma_plate})")
    if n_mc < 1:
        raise ValueError(f"n_mc must be >= 1 (got {n_mc})")
    _check_incident(incident)
    xs = _screen_xs(geom, n, x_max)
    sigma = geom.sigma(xs)
    t = np.diagonal(insert.jones().m)
    rng = np.random.default_rng(seed)
    sum_x = np.zeros_like(xs)
    sum_y = np.zeros_like(xs)
    done = 0
    while done < n_mc:
        k = min(chunk, n_mc - done)
        shifts = rng.normal(0.0, sigma_plate, size=(k, 2))
        left, right = _slit_terms(geom, sigma[None, :], (shifts[:, :1], shifts[:, 1:]))
        ex = incident.ex * (left + t[0] * right)
        ey = incident.ey * (left + t[1] * right)
        sum_x += np.sum(np.abs(ex) ** 2, axis=0)
        sum_y += np.sum(np.abs(ey) ** 2, axis=0)
        done += k
    # incoherent average: keep rms amplitude per component, phases are gone
    profile = ScreenProfile.from_fields(xs, np.sqrt(sum_x / n_mc), np.sqrt(sum_y / n_mc), geom)
    if window is None:
        window = first_order_window(geom)
    return profile, visibility(profile, window)
