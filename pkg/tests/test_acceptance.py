"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (visible with or without -s).
"""

import numpy as np
import pytest

from whichpath import cli
from whichpath import doubleslit as ds
from whichpath import interferometer as mz
from whichpath import scattering as sc
from whichpath import uncertainty as unc
from whichpath.jones import JonesVector, mirror, qwp

SPEED_OF_LIGHT = 2.99792458e14  # um/s


@pytest.fixture
def verdict(capsys, request):
    """Call with the criterion label, then run the body; prints PASS/FAIL at teardown."""
    label = {}

    def set_label(text):
        label["text"] = text

    yield set_label
    rep = getattr(request.node, "rep_call", None)
    failed = rep is None or rep.failed
    with capsys.disabled():
        print(f"\n{'FAIL' if failed else 'PASS'}  {label.get('text', request.node.name)}")


def test_c01_central_fringe_swap(geom, verdict):
    verdict("1  central fringe swap and half-period shift")
    x = JonesVector.x()
    a = ds.screen_profile(geom, ds.SlitInsert.NONE, x, n=2001, x_max=5 * geom.fringe_period)
    b = ds.screen_profile(geom, ds.SlitInsert.PI_SHIFTER, x, n=2001, x_max=5 * geom.fringe_period)
    mid = len(a.xs) // 2
    assert a.intensity[mid] == a.intensity.max()
    assert b.intensity[mid] <= 1e-12
    step = a.xs[1] - a.xs[0]
    qa = a.intensity / a.envelope()
    qb = b.intensity / b.envelope()
    qa, qb = qa - qa.mean(), qb - qb.mean()
    period_samples = int(round(geom.fringe_period / step))
    lags = np.arange(0, period_samples)
    corr = [np.dot(qa[: len(qa) - k], qb[k:]) for k in lags]
    best = lags[int(np.argmax(corr))] * step
    assert abs(best - geom.lambda0 * geom.L / (2 * geom.d)) <= step


def test_c02_fringe_momentum(verdict):
    verdict("2  fringe momentum 2 pi hbar / d")
    rng = np.random.default_rng(2)
    for _ in range(100):
        lam = rng.uniform(0.3, 1.2)
        d = rng.uniform(5, 200) * lam
        w = rng.uniform(0.05, 0.9) * d
        g = ds.SlitGeometry(w, d, lam, rng.uniform(100, 1000) * d)
        hbar = rng.uniform(0.5, 2.0)
        p = ds.fringe_momentum(g, hbar)
        omega = 2 * np.pi * SPEED_OF_LIGHT / lam
        assert abs(p - 2 * np.pi * hbar / d) <= 1e-12 * p
        assert abs(p - hbar * omega / SPEED_OF_LIGHT * (lam / d)) <= 1e-12 * p


def test_c03_concealment_and_eraser(geom, verdict):
    verdict("3  polarization concealment and eraser")
    prof = ds.screen_profile(geom, ds.SlitInsert.BIREFRINGENT_HWP, JonesVector.linear(np.pi / 4))
    assert ds.visibility(prof) < 1e-9
    px = ds.apply_eraser(prof, 0.0)
    py = ds.apply_eraser(prof, np.pi / 2)
    assert ds.visibility(px) > 1 - 1e-9
    assert ds.visibility(py) > 1 - 1e-9
    mid = len(prof.xs) // 2
    assert px.intensity[mid] == pytest.approx(px.intensity.max(), rel=1e-12)
    assert py.intensity[mid] <= 1e-12 * py.intensity.max()


def test_c04_complementarity(verdict):
    verdict("4  MZ visibility = polarization overlap x envelope overlap")
    rng = np.random.default_rng(4)
    x = JonesVector.x()
    for _ in range(200):
        a1, a2 = rng.uniform(-np.pi, np.pi, 2)
        dw = rng.uniform(0.002, 0.05) * 3.77e15
        mismatch = rng.uniform(0, 30)
        ov = mz.wavepacket_overlap(dw, 3.77e15, mismatch)
        pa, pb = (mirror() @ (qwp(a) @ x) for a in (a1, a2))
        v = mz.mz_visibility(mz.MzConfig(0.0, True, (a1, a2), ov))
        assert abs(v - abs(pa.inner(pb)) * ov) <= 1e-9
    orth = mz.MzConfig(0.0, True, (np.pi / 4, -np.pi / 4))
    assert mz.mz_visibility(orth) < 1e-9


@pytest.mark.parametrize("mult", [0, 1, 3])
def test_c05_mirror_jitter(mult, verdict):
    verdict(f"5  mirror jitter sigma = {mult} lambda/(4 pi)")
    lam = 0.5
    k = 2 * np.pi / lam
    sigma = mult * lam / (4 * np.pi)
    v, se = mz.mirror_jitter_visibility(sigma, lam, 100_000, seed=5, return_stderr=True)
    expect = np.exp(-2 * k ** 2 * sigma ** 2)
    if mult == 0:
        assert abs(v - 1.0) <= 1e-12
    else:
        assert abs(v - expect) <= 3 * se
    if mult == 3:
        assert v < 0.02


def test_c06_sagnac(verdict):
    verdict("6  Sagnac null, pi response and period")
    for q in (False, True):
        f = lambda p: mz.sagnac_output(mz.SagnacConfig(p, q))
        assert abs(f(0.0)) <= 1e-12
        assert abs(f(np.pi) - 1.0) <= 1e-12
        for p in np.linspace(-3, 3, 13):
            assert abs(f(p) - f(p + 2 * np.pi)) <= 1e-12


def test_c07_scattering_channels(scatter_geom, verdict):
    verdict("7  scattering channel structure")
    g = scatter_geom
    xs = np.linspace(-3000, 3000, 61)
    assert np.all(sc.scatter_amplitude(g, sc.ScatterChannel.MINUS, np.pi / 2, xs) == 0)
    pat = sc.screen_pattern(g, sc.ScatterChannel.PLUS, sc.WhichPathOverlap(1.0))
    q = pat.probability / pat.envelope
    peaks = np.array([i for i in range(1, len(q) - 1) if q[i] >= q[i - 1] and q[i] > q[i + 1]])
    step = pat.xs[1] - pat.xs[0]
    assert len(peaks) >= 4
    assert np.all(np.abs(np.diff(pat.xs[peaks]) - g.lambda0 * g.r0 / g.d) <= step)
    # away from cosine zeros, where both amplitudes vanish
    far = xs[np.abs(np.cos(np.pi * g.d * xs / (g.lambda0 * g.r0))) > 1e-3]
    for theta in (0.3, 1.0, 2.5):
        plus = sc.scatter_amplitude(g, sc.ScatterChannel.PLUS, theta, far)
        minus = sc.scatter_amplitude(g, sc.ScatterChannel.MINUS, theta, far)
        ratio = np.abs(minus / plus) ** 2
        s = np.sin(theta)
        assert np.max(np.abs(ratio - ((s - 1) / (s + 1)) ** 2)) <= 1e-12


def test_c08_entanglement_wipeout(scatter_geom, verdict):
    verdict("8  marker overlap gamma sets visibility")
    g = scatter_geom
    ch = sc.ScatterChannel.MINUS
    xs = np.linspace(-2000, 2000, 401)
    p0 = sc.screen_pattern(g, ch, sc.WhichPathOverlap(0.0))
    assert sc.pattern_visibility(p0) < 1e-12
    s = g.r0 / np.hypot(xs, g.r0)
    amp = (s - 1) * np.cos(np.pi * g.d * xs / (g.lambda0 * g.r0))
    p1 = sc.detection_probability(g, ch, xs, sc.WhichPathOverlap(1.0))
    assert np.max(np.abs(p1 - amp ** 2)) <= 1e-12
    for gamma in np.round(np.arange(0, 1.01, 0.1), 10):
        pat = sc.screen_pattern(g, ch, sc.WhichPathOverlap(float(gamma)))
        assert abs(sc.pattern_visibility(pat) - gamma) <= 1e-12


def test_c09_uncertainty(verdict):
    verdict("9  generalized uncertainty relation")
    results = unc.random_suite(1000, seed=9, dims=range(2, 9))
    assert all(r.lhs >= r.rhs - 1e-10 for r in results)
    r = unc.uncertainty_check(unc.PAULI_X, unc.PAULI_Y, np.array([1, 0]))
    assert abs(r.lhs - 1) <= 1e-10 and abs(r.rhs - 1) <= 1e-10
    x, p = unc.oscillator_xp(40)
    r = unc.uncertainty_check(x, p, unc.fock_state(40))
    assert abs(r.lhs - 0.5) <= 1e-8


def test_c10_ehrenfest_energy_time(verdict):
    verdict("10 Ehrenfest O(dt^2) and energy-time relation")
    rng = np.random.default_rng(10)
    A, H = unc.random_hermitian(6, rng), unc.random_hermitian(6, rng)
    psi = unc.random_state(6, rng)
    e1 = unc.ehrenfest_check(A, H, psi, 1e-2)
    e2 = unc.ehrenfest_check(A, H, psi, 5e-3)
    ratio = abs(e1.lhs - e1.rhs) / abs(e2.lhs - e2.rhs)
    assert abs(ratio - 4.0) <= 0.5
    for _ in range(500):
        n = int(rng.integers(2, 9))
        A, H = unc.random_hermitian(n, rng), unc.random_hermitian(n, rng)
        r = unc.energy_time_check(A, H, unc.random_state(n, rng))
        assert r.delta_E * r.delta_t >= 0.5 - 1e-10


def test_c11_wavepacket(verdict):
    verdict("11 wavepacket duration and length")
    dw = 0.01 * 3.77e15
    assert 15e-15 <= mz.wavepacket_duration(dw) <= 60e-15
    assert 4.5 <= mz.wavepacket_length(dw) <= 18.0


def test_c12_cli_determinism(tmp_path, capsys, verdict):
    verdict("12 CLI byte-identical reruns")
    argv = ["double-slit", "--set", "w=10", "--set", "d=50", "--set", "lambda0=0.5",
            "--set", "L=100000", "--set", "sigma_plate=5", "--set", "n_mc=300", "--set", "n=401",
            "--seed", "12", "--format", "csv,report"]
    dirs = [tmp_path / "a", tmp_path / "b"]
    for d in dirs:
        assert cli.main(argv + ["--out", str(d)]) == 0
    capsys.readouterr()
    names = sorted(p.name for p in dirs[0].iterdir())
    assert "report.json" in names and any(n.endswith(".csv") for n in names)
    assert names == sorted(p.name for p in dirs[1].iterdir())
    for n in names:
        assert (dirs[0] / n).read_bytes() == (dirs[1] / n).read_bytes()
