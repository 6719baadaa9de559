import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whichpath import doubleslit as ds
from whichpath.jones import JonesVector, NotNormalizedError, equal_up_to_phase, spin_z

NONE, PI, HWP = ds.SlitInsert.NONE, ds.SlitInsert.PI_SHIFTER, ds.SlitInsert.BIREFRINGENT_HWP
DIAG = JonesVector.linear(np.pi / 4)


def aperture_transform(geom, sigma, right_factor, n=200_001):
    """Direct quadrature of the slit aperture's Fourier integral (midpoint rule)."""
    out = []
    for s in np.atleast_1d(sigma):
        total = 0j
        for centre, t in ((-geom.d / 2, 1.0), (geom.d / 2, right_factor)):
            edges = np.linspace(centre - geom.w / 2, centre + geom.w / 2, n + 1)
            mid = 0.5 * (edges[1:] + edges[:-1])
            total += t * np.sum(np.exp(-2j * np.pi * s * mid)) * (geom.w / n)
        out.append(total)
    return np.array(out)


@pytest.mark.parametrize("insert,right", [(NONE, 1.0), (PI, -1.0)])
def test_far_field_matches_quadrature(geom, insert, right):
    sigma = np.array([0.0, 0.003, 1 / geom.d, 0.017, -0.041])
    ax, ay = ds.far_field_amplitude(geom, sigma, insert)
    ref = aperture_transform(geom, sigma, right)
    assert np.allclose(ax, ref, atol=1e-8 * geom.w)
    assert np.allclose(ay, ref, atol=1e-8 * geom.w)


def test_hwp_insert_splits_components(geom):
    sigma = np.linspace(-0.05, 0.05, 11)
    ax, ay = ds.far_field_amplitude(geom, sigma, HWP)
    assert np.allclose(ax, ds.far_field_amplitude(geom, sigma, NONE)[0])
    assert np.allclose(ay, ds.far_field_amplitude(geom, sigma, PI)[0])


def test_far_field_examples(geom):
    assert ds.far_field_amplitude(geom, 0.0, NONE) == (2 * geom.w, 2 * geom.w)
    assert ds.far_field_amplitude(geom, 0.0, PI) == (0, 0)
    g = ds.SlitGeometry(1.0, 5.0, 0.5, 1e4)
    ax, _ = ds.far_field_amplitude(g, 1 / g.d, NONE)
    assert ax.real == pytest.approx(-2 * g.w * np.sinc(g.w / g.d), rel=1e-12)
    assert abs(ds.far_field_amplitude(g, 1 / (2 * g.d), NONE)[0]) < 1e-15


def test_pi_shifter_form(geom):
    s = np.linspace(-0.03, 0.03, 7)
    ax, _ = ds.far_field_amplitude(geom, s, PI)
    assert np.allclose(ax, 2j * geom.w * np.sinc(geom.w * s) * np.sin(np.pi * geom.d * s), atol=1e-12)


def test_evanescent_rejected(geom):
    with pytest.raises(ds.EvanescentAngleError):
        ds.far_field_amplitude(geom, 1.01 / geom.lambda0, NONE)


@pytest.mark.parametrize("kwargs", [
    dict(w=0, d=5, lambda0=0.5, L=1e4),
    dict(w=5, d=5, lambda0=0.5, L=1e4),
    dict(w=1, d=5, lambda0=-1, L=1e4),
    dict(w=1, d=5, lambda0=0.5, L=400),
])
def test_invalid_geometry(kwargs):
    with pytest.raises(ValueError):
        ds.SlitGeometry(**kwargs)


def test_screen_profile_preconditions(geom):
    with pytest.raises(NotNormalizedError):
        ds.screen_profile(geom, NONE, JonesVector(1, 1))
    with pytest.raises(ValueError):
        ds.screen_profile(geom, NONE, JonesVector.x(), n=1)
    with pytest.raises(ValueError):
        ds.screen_profile(geom, NONE, JonesVector.x(), x_max=0.3 * geom.L)


def test_none_profile_fringe_spacing(geom):
    prof = ds.screen_profile(geom, NONE, JonesVector.x())
    q = prof.intensity / prof.envelope()
    peaks = [i for i in range(1, len(q) - 1) if q[i] >= q[i - 1] and q[i] > q[i + 1]]
    spacing = np.diff(prof.xs[peaks])
    step = prof.xs[1] - prof.xs[0]
    assert np.all(np.abs(spacing - geom.fringe_period) <= step)
    assert np.argmax(prof.intensity) == len(prof.xs) // 2


def test_hwp_diag_profile_is_envelope_only(geom):
    prof = ds.screen_profile(geom, HWP, DIAG)
    env = prof.envelope()
    assert np.allclose(prof.intensity, 2 * geom.w ** 2 * env, rtol=1e-12, atol=1e-12)
    assert ds.visibility(prof) < 1e-9


def test_pi_profile_is_half_fringe_shift(geom):
    a = ds.screen_profile(geom, NONE, JonesVector.x())
    b = ds.screen_profile(geom, PI, JonesVector.x())
    shift = int(round(0.5 * geom.fringe_period / (a.xs[1] - a.xs[0])))
    qa = a.intensity / a.envelope()
    qb = b.intensity / b.envelope()
    assert np.allclose(qa[shift:], qb[:-shift], atol=1e-9 * qa.max())


def test_eraser_recovers_fringes(geom):
    prof = ds.screen_profile(geom, HWP, DIAG)
    px = ds.apply_eraser(prof, 0.0)
    py = ds.apply_eraser(prof, np.pi / 2)
    assert ds.visibility(px) == pytest.approx(1.0, abs=1e-9)
    assert ds.visibility(py) == pytest.approx(1.0, abs=1e-9)
    mid = len(prof.xs) // 2
    assert px.intensity[mid] == pytest.approx(px.intensity.max())
    assert py.intensity[mid] < 1e-20


def test_eraser_idempotent(geom):
    prof = ds.screen_profile(geom, HWP, DIAG)
    once = ds.apply_eraser(prof, 0.4)
    twice = ds.apply_eraser(once, 0.4)
    assert np.allclose(once.ex, twice.ex, atol=1e-14) and np.allclose(once.ey, twice.ey, atol=1e-14)


@settings(max_examples=30)
@given(st.floats(0, np.pi), st.sampled_from([NONE, PI, HWP]), st.floats(0, np.pi))
def test_eraser_never_adds_light(angle, insert, inc):
    g = ds.SlitGeometry(10.0, 50.0, 0.5, 1e5)
    prof = ds.screen_profile(g, insert, JonesVector.linear(inc), n=201)
    erased = ds.apply_eraser(prof, angle)
    assert np.all(erased.intensity <= prof.intensity * (1 + 1e-12) + 1e-15)
    assert np.allclose(erased.intensity, np.abs(erased.ex) ** 2 + np.abs(erased.ey) ** 2, atol=1e-12)
    assert 0.0 <= ds.visibility(erased) <= 1.0


def test_parity(geom):
    a = ds.screen_profile(geom, NONE, JonesVector.x())
    b = ds.screen_profile(geom, PI, JonesVector.x())
    assert np.allclose(a.intensity, a.intensity[::-1], atol=1e-12)
    assert np.allclose(b.intensity, b.intensity[::-1], atol=1e-12)
    assert b.intensity[len(b.xs) // 2] < 1e-24
    s = np.linspace(0.001, 0.05, 9)
    assert np.allclose(ds.far_field_amplitude(geom, s, PI)[0], -ds.far_field_amplitude(geom, -s, PI)[0])


def test_superposition_consistency(geom):
    h = ds.screen_profile(geom, HWP, DIAG)
    c = ds.screen_profile(geom, NONE, JonesVector.x())
    s = ds.screen_profile(geom, PI, JonesVector.x())
    assert np.allclose(h.intensity, 0.5 * c.intensity + 0.5 * s.intensity, rtol=1e-12, atol=1e-12)


def test_polarization_map(geom):
    prof = ds.screen_profile(geom, HWP, DIAG)
    p = geom.fringe_period
    assert equal_up_to_phase(ds.polarization_at(prof, 0.0), JonesVector.x())
    assert equal_up_to_phase(ds.polarization_at(prof, p / 2), JonesVector.y())
    # |cos| = |sin| a quarter period out: circular
    assert abs(spin_z(ds.polarization_at(prof, p / 4))) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        ds.polarization_at(prof, 10 * p)


def test_polarization_undefined_in_dark(geom):
    prof = ds.screen_profile(geom, PI, JonesVector.x())
    with pytest.raises(ds.UndefinedPolarizationError):
        ds.polarization_at(prof, 0.0)


def test_visibility_window_checks(geom):
    prof = ds.screen_profile(geom, NONE, JonesVector.x())
    p = geom.fringe_period
    assert ds.visibility(prof, (-p, p)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        ds.visibility(prof, (0, 20 * p))


def test_visibility_zero_profile(geom):
    prof = ds.apply_eraser(ds.screen_profile(geom, NONE, JonesVector.y()), 0.0)
    assert ds.visibility(prof) == 0.0


def test_fringe_momentum(geom):
    assert ds.fringe_momentum(ds.SlitGeometry(1, 5, 0.5, 1e4)) == pytest.approx(2 * np.pi / 5)
    g2 = ds.SlitGeometry(geom.w, 2 * geom.d, geom.lambda0, 2 * geom.L)
    assert ds.fringe_momentum(g2) == pytest.approx(ds.fringe_momentum(geom) / 2)


def blurred_mean_and_se(geom, sigma, sigma_plate, n_mc):
    """Exact mean intensity and its Monte-Carlo standard error for jittered plates."""
    s2 = (2 * np.pi * sigma) ** 2 * 2 * sigma_plate ** 2
    a = 2 * np.pi * geom.d * sigma
    amp = 2 * (geom.w * np.sinc(geom.w * sigma)) ** 2
    mean = amp * (1 + np.cos(a) * np.exp(-s2 / 2))
    var_cos = 0.5 * (1 + np.cos(2 * a) * np.exp(-2 * s2)) - (np.cos(a) * np.exp(-s2 / 2)) ** 2
    return mean, amp * np.sqrt(var_cos / n_mc)


@pytest.mark.parametrize("alpha", [0.1, 0.3, 1.0])
def test_bohr_blur_matches_analytic_mean(geom, alpha):
    n_mc = 20000
    p = geom.fringe_period
    prof, _ = ds.bohr_blur(geom, NONE, JonesVector.x(), alpha * geom.d, n_mc, seed=11,
                           n=401, x_max=2 * p)
    for x in (p, p / 2, 1.5 * p):
        i = int(np.argmin(np.abs(prof.xs - x)))
        mean, se = blurred_mean_and_se(geom, geom.sigma(prof.xs[i]), alpha * geom.d, n_mc)
        assert abs(prof.intensity[i] - mean) <= 3 * se + 1e-12


def test_bohr_blur_attenuation_factor(geom):
    # at sigma_x = 1/d the fringe term is scaled by exp(-4 pi^2 sigma_plate^2 / d^2)
    assert ds.blur_attenuation(1 / geom.d, 0.1 * geom.d) == pytest.approx(np.exp(-4 * np.pi ** 2 * 0.01))


def test_bohr_blur_visibility_levels(geom):
    p = geom.fringe_period
    kw = dict(n=401, x_max=2 * p)
    _, v0 = ds.bohr_blur(geom, NONE, JonesVector.x(), 0.0, 3, seed=1, **kw)
    _, v1 = ds.bohr_blur(geom, NONE, JonesVector.x(), 0.1 * geom.d, 20000, seed=1, **kw)
    _, v2 = ds.bohr_blur(geom, NONE, JonesVector.x(), geom.d, 100000, seed=1, **kw)
    assert v0 == 1.0
    assert v1 > 0.8
    assert v2 < 0.01


def test_bohr_blur_deterministic(geom):
    kw = dict(n=101, x_max=2 * geom.fringe_period)
    a, va = ds.bohr_blur(geom, HWP, DIAG, 3.0, 500, seed=5, **kw)
    b, vb = ds.bohr_blur(geom, HWP, DIAG, 3.0, 500, seed=5, **kw)
    assert va == vb and np.array_equal(a.intensity, b.intensity)
    assert np.allclose(a.intensity, np.abs(a.ex) ** 2 + np.abs(a.ey) ** 2, atol=1e-12)


def test_bohr_blur_rejects_bad_input(geom):
    with pytest.raises(ValueError):
        ds.bohr_blur(geom, NONE, JonesVector.x(), -1.0, 10)
    with pytest.raises(ValueError):
        ds.bohr_blur(geom, NONE, JonesVector.x(), 1.0, 0)
