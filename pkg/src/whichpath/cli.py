"""``whichpath`` scenario runner.

    whichpath <scenario> [--config FILE] [--seed N] [--out DIR]
              [--format csv,svg,report] [--set key=value ...] [--si]

Parameter precedence is ``--set`` > config file > built-in defaults; the seed
comes from ``--seed``, then the config file, then ``WHICHPATH_SEED``.  A written
report is itself a valid config file, so any run can be replayed from it.

Exit codes: 0 success, 2 invalid configuration, 3 a consistency check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__, doubleslit, interferometer, scattering, uncertainty
from .jones import JonesVector

SCENARIOS = ("double-slit", "mach-zehnder", "sagnac", "scattering", "uncertainty")
FORMATS = ("csv", "svg", "report")
DEFAULT_FORMATS = ("csv", "report")
HBAR_SI = 1.054571817e-34
MICROMETER = 1e-6

EXIT_OK, EXIT_INVALID, EXIT_CONSISTENCY = 0, 2, 3

REQUIRED = object()


@dataclass(frozen=True)
class Param:
    kind: str
    default: Any = REQUIRED
    check: Callable[[Any], str | None] | None = None


def _positive(v):
    return None if v > 0 else "must be > 0"


def _non_negative(v):
    return None if v >= 0 else "must be >= 0"


def _unit(v):
    return None if 0 <= v <= 1 else "must lie in [0, 1]"


def _at_least(n):
    return lambda v: None if v >= n else f"must be >= {n}"


SCHEMAS: dict[str, dict[str, Param]] = {
    "double-slit": {
        "w": Param("float", check=_positive),
        "d": Param("float", check=_positive),
        "lambda0": Param("float", check=_positive),
        "L": Param("float", check=_positive),
        "insert": Param("choice:none,pi,hwp", "none"),
        "incident": Param("polarization", 0.0),
        "erasers": Param("erasers", ["none"]),
        "n": Param("int", doubleslit.DEFAULT_SAMPLES, _at_least(2)),
        "x_max": Param("float?", None),
        "window": Param("interval?", None),
        "sigma_plate": Param("float", 0.0, _non_negative),
        "n_mc": Param("int", 2000, _at_least(1)),
    },
    "mach-zehnder": {
        "phase_diff": Param("float", 0.0),
        "with_qwps": Param("bool", False),
        "qwp_angles": Param("pair", [math.pi / 4, math.pi / 4]),
        "lambda0": Param("float", 0.5, _positive),
        "sigma_x": Param("float", 0.0, _non_negative),
        "delta_phi": Param("float", 0.0, _non_negative),
        "n_mc": Param("int", 10000, _at_least(1)),
        "omega0": Param("float", 3.77e15, _positive),
        "linewidth_fraction": Param("float", 0.01, _positive),
        "path_mismatch": Param("float", 0.0, _non_negative),
        "n_phase": Param("int", 64, _at_least(4)),
    },
    "sagnac": {
        "rotation_phase": Param("float", 0.0),
        "with_qwps": Param("bool", False),
        "n_phase": Param("int", 64, _at_least(4)),
    },
    "scattering": {
        "d": Param("float", check=_positive),
        "lambda0": Param("float", check=_positive),
        "r0": Param("float", check=_positive),
        "channel": Param("choice:+,-", "-"),
        "gamma": Param("float", 0.0, _unit),
        "overlap_phase": Param("float", 0.0),
        "n": Param("int", scattering.DEFAULT_SAMPLES, _at_least(2)),
        "x_max": Param("float?", None),
    },
    "uncertainty": {
        "suite": Param("choice:random,pauli,oscillator,energy-time", "random"),
        "n": Param("int", 1000, _at_least(1)),
        "dim_min": Param("int", 2, _at_least(2)),
        "dim_max": Param("int", 8, _at_least(2)),
        "n_levels": Param("int", 40, _at_least(4)),
        "hbar": Param("float", 1.0, _positive),
    },
}


@dataclass
class ScenarioConfig:
    scenario: str
    params: dict = field(default_factory=dict)
    output: str = "."
    formats: tuple[str, ...] = DEFAULT_FORMATS
    seed: int | None = None
    si: bool = False


@dataclass
class RunReport:
    scenario: str
    params: dict
    seed: int
    results: dict
    checks: list
    artifacts: list
    formats: list
    version: str = __version__
    si: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        out = {
            "scenario": self.scenario, "params": self.params, "seed": self.seed,
            "results": self.results, "checks": self.checks, "artifacts": self.artifacts,
            "formats": self.formats, "version": self.version,
        }
        if self.si is not None:
            out["si"] = self.si
        return out


class ConfigError(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _check_kind(kind: str, v) -> str | None:
    if kind.endswith("?"):
        if v is None:
            return None
        kind = kind[:-1]
    if kind == "float":
        return None if _is_number(v) else "must be a finite number"
    if kind == "int":
        return None if isinstance(v, int) and not isinstance(v, bool) else "must be an integer"
    if kind == "bool":
        return None if isinstance(v, bool) else "must be true or false"
    if kind.startswith("choice:"):
        options = kind.split(":", 1)[1].split(",")
        return None if v in options else f"must be one of {options}"
    if kind in ("pair", "interval"):
        ok = isinstance(v, (list, tuple)) and len(v) == 2 and all(_is_number(a) for a in v)
        if ok and kind == "interval" and not v[0] < v[1]:
            return "must be [lo, hi] with lo < hi"
        return None if ok else "must be a list of two numbers"
    if kind == "polarization":
        return None if _is_number(v) or v in ("x", "y", "rcp", "lcp") else \
            "must be an angle in radians or one of x, y, rcp, lcp"
    if kind == "erasers":
        ok = isinstance(v, list) and v and all(a == "none" or _is_number(a) for a in v)
        return None if ok else "must be a non-empty list of 'none' or pass-axis angles in radians"
    raise AssertionError(kind)


def resolve_params(scenario: str, params: dict) -> dict:
    schema = SCHEMAS[scenario]
    out = {k: p.default for k, p in schema.items() if p.default is not REQUIRED}
    out.update(params)
    return out


def validate(config: ScenarioConfig) -> list[str]:
    """Schema violations for ``config``; empty iff :func:`run` would accept it."""
    if config.scenario not in SCHEMAS:
        return [f"scenario: unknown scenario {config.scenario!r} (expected one of {list(SCENARIOS)})"]
    problems = []
    for f in config.formats:
        if f not in FORMATS:
            problems.append(f"formats: unknown format {f!r}")
    if config.seed is not None and not (isinstance(config.seed, int) and config.seed >= 0):
        problems.append(f"seed: must be a non-negative integer (got {config.seed!r})")
    schema = SCHEMAS[config.scenario]
    params = resolve_params(config.scenario, config.params)
    for key in params:
        if key not in schema:
            problems.append(f"{key}: unknown parameter for {config.scenario}")
    for key, p in schema.items():
        if key not in params:
            problems.append(f"{key}: required parameter is missing")
            continue
        msg = _check_kind(p.kind, params[key])
        if msg is None and p.check is not None and params[key] is not None:
            msg = p.check(params[key])
        if msg:
            problems.append(f"{key}: {msg}")
    if problems:
        return problems
    return problems + _cross_checks(config.scenario, params)


def _cross_checks(scenario: str, p: dict) -> list[str]:
    out = []
    if scenario == "double-slit":
        for msg in doubleslit.geometry_violations(p["w"], p["d"], p["lambda0"], p["L"]):
            out.append(f"{msg.split()[0]}: {msg}")
        if not out:
            x_max = p["x_max"] if p["x_max"] is not None else 5 * p["L"] * p["lambda0"] / p["d"]
            if x_max / p["L"] > doubleslit.PARAXIAL_LIMIT:
                out.append(f"x_max: x_max/L exceeds the paraxial limit {doubleslit.PARAXIAL_LIMIT}")
            if p["window"] is not None and (p["window"][0] < -x_max or p["window"][1] > x_max):
                out.append("window: must lie inside [-x_max, x_max]")
    elif scenario == "scattering":
        for msg in scattering.geometry_violations(p["d"], p["lambda0"], p["r0"]):
            out.append(f"{msg.split()[0]}: {msg}")
        if not out and p["x_max"] is not None and p["x_max"] > p["r0"]:
            out.append("x_max: must not exceed r0")
    elif scenario == "uncertainty":
        if p["dim_min"] > p["dim_max"]:
            out.append("dim_max: must be >= dim_min")
    return out


# ---------------------------------------------------------------- output helpers

def _fmt(v) -> str:
    return format(float(v), ".17g")


def _write_csv(path: Path, header: list[str], columns: list) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([_fmt(v) if not isinstance(v, (bool, np.bool_, str)) else str(v) for v in row])


def _write_svg(path: Path, x, y, xlabel: str, ylabel: str, title: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "whichpath"
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(x, y, lw=1.0)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def _profile_columns(profile: doubleslit.ScreenProfile):
    return (["x", "intensity", "ex_re", "ex_im", "ey_re", "ey_im"],
            [profile.xs, profile.intensity, profile.ex.real, profile.ex.imag,
             profile.ey.real, profile.ey.imag])


def _clean(v):
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    return v


class _Run:
    """Collects results, checks and artifacts for one scenario execution."""

    def __init__(self, config: ScenarioConfig, params: dict, seed: int):
        self.config, self.params, self.seed = config, params, seed
        self.out = Path(config.output)
        self.results: dict = {}
        self.checks: list = []
        self.artifacts: list = []
        self.si: dict = {}

    def check(self, name: str, passed, detail: str = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    def csv(self, name: str, header, columns) -> None:
        if "csv" in self.config.formats:
            _write_csv(self.out / name, header, columns)
            self.artifacts.append(name)

    def svg(self, name: str, x, y, xlabel, ylabel, title) -> None:
        if "svg" in self.config.formats:
            _write_svg(self.out / name, x, y, xlabel, ylabel, title)
            self.artifacts.append(name)


def _incident(v) -> JonesVector:
    named = {"x": JonesVector.x, "y": JonesVector.y, "rcp": JonesVector.rcp, "lcp": JonesVector.lcp}
    return named[v]() if isinstance(v, str) else JonesVector.linear(float(v))


def _run_double_slit(r: _Run) -> None:
    p = r.params
    geom = doubleslit.SlitGeometry(p["w"], p["d"], p["lambda0"], p["L"])
    insert = doubleslit.SlitInsert(p["insert"])
    incident = _incident(p["incident"])
    base = doubleslit.screen_profile(geom, insert, incident, p["n"], p["x_max"])
    window = tuple(p["window"]) if p["window"] is not None else None
    vis = {}
    for eraser in p["erasers"]:
        if eraser == "none":
            tag, prof = "none", base
        else:
            tag = f"pol{_fmt(eraser)}"
            prof = doubleslit.apply_eraser(base, float(eraser))
            r.check(f"eraser_{tag}_never_increases_intensity",
                    np.all(prof.intensity <= base.intensity * (1 + 1e-12) + 1e-300))
        v = doubleslit.visibility(prof, window)
        vis[tag] = v
        r.check(f"visibility_{tag}_in_unit_interval", 0.0 <= v <= 1.0)
        r.check(f"intensity_{tag}_equals_field_sum", np.allclose(
            prof.intensity, np.abs(prof.ex) ** 2 + np.abs(prof.ey) ** 2, rtol=0, atol=1e-12))
        r.csv(f"profile_{tag}.csv", *_profile_columns(prof))
        r.svg(f"profile_{tag}.svg", prof.xs, prof.intensity, "x (um)", "intensity",
              f"double slit, insert={p['insert']}, eraser={eraser}")
    i0 = np.interp(0.0, base.xs, base.intensity)
    r.results.update({
        "visibility": vis,
        "central_intensity": i0,
        "fringe_period": geom.fringe_period,
        "fringe_momentum_hbar_per_um": doubleslit.fringe_momentum(geom),
    })
    r.si["fringe_momentum_kg_m_per_s"] = doubleslit.fringe_momentum(geom, HBAR_SI) / MICROMETER
    r.si["fringe_period_m"] = geom.fringe_period * MICROMETER
    if p["sigma_plate"] > 0:
        blurred, bv = doubleslit.bohr_blur(geom, insert, incident, p["sigma_plate"], p["n_mc"],
                                           r.seed, p["n"], p["x_max"])
        r.results["blur_visibility"] = bv
        lo, hi = doubleslit.first_order_window(geom)
        r.results["blur_window"] = [lo, hi]
        r.check("blur_visibility_in_unit_interval", 0.0 <= bv <= 1.0)
        r.csv("profile_blurred.csv", *_profile_columns(blurred))
        r.svg("profile_blurred.svg", blurred.xs, blurred.intensity, "x (um)", "mean intensity",
              f"plate jitter sigma = {p['sigma_plate']} um")


def _run_mach_zehnder(r: _Run) -> None:
    p = r.params
    omega0 = p["omega0"]
    d_omega = p["linewidth_fraction"] * omega0
    overlap = interferometer.wavepacket_overlap(d_omega, omega0, p["path_mismatch"])
    cfg = interferometer.MzConfig(p["phase_diff"], p["with_qwps"], tuple(p["qwp_angles"]), overlap)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", interferometer.HandednessMismatchWarning)
        p1, p2 = interferometer.mz_output(cfg)
    warned = [str(w.message) for w in caught
              if issubclass(w.category, interferometer.HandednessMismatchWarning)]
    arms = interferometer.mz_arms(replace(cfg, phase_diff=0.0))
    marker = abs(arms["lower"].pol.inner(arms["upper"].pol))
    vis = interferometer.mz_visibility(cfg, p["n_phase"])
    r.results.update({
        "p1": p1, "p2": p2, "visibility": vis, "polarization_overlap": marker,
        "envelope_overlap": overlap,
        "wavepacket_duration_fs": interferometer.wavepacket_duration(d_omega) * 1e15,
        "wavepacket_length_um": interferometer.wavepacket_length(d_omega),
        "handedness_warning": warned[0] if warned else None,
    })
    r.si["wavepacket_length_m"] = r.results["wavepacket_length_um"] * MICROMETER
    r.check("probability_conservation", abs(p1 + p2 - 1) <= 1e-12)
    r.check("complementarity_law", abs(vis - marker * overlap) <= 1e-9,
            "visibility == |<pol1|pol2>| * envelope overlap")
    if p["sigma_x"] > 0:
        v, err = interferometer.mirror_jitter_visibility(p["sigma_x"], p["lambda0"], p["n_mc"], r.seed,
                                                         return_stderr=True)
        k = 2 * math.pi / p["lambda0"]
        r.results["mirror_jitter_visibility"] = v
        r.results["mirror_jitter_stderr"] = err
        r.results["mirror_jitter_oracle"] = math.exp(-2 * k ** 2 * p["sigma_x"] ** 2)
    if p["delta_phi"] > 0:
        r.results["qwp_jitter_visibility"] = interferometer.qwp_jitter_visibility(
            p["delta_phi"], p["n_mc"], r.seed + 1, tuple(p["qwp_angles"]))
        r.results["readable_recoil_min_delta_phi"] = interferometer.min_orientation_spread(1.0)
    phases = interferometer.sweep_phases(p["n_phase"])
    p1s, p2s = interferometer.recombine(arms, "lower", "upper", overlap, phases)
    r.csv("mz_sweep.csv", ["phase", "p1", "p2"], [phases, p1s, p2s])
    r.svg("mz_sweep.svg", phases, p1s, "phase (rad)", "P(port 1)", "Mach-Zehnder sweep")


def _run_sagnac(r: _Run) -> None:
    p = r.params
    cfg = interferometer.SagnacConfig(p["rotation_phase"], p["with_qwps"])
    prob = interferometer.sagnac_output(cfg)
    null = interferometer.sagnac_output(interferometer.SagnacConfig(0.0, p["with_qwps"]))
    shifted = interferometer.sagnac_output(
        interferometer.SagnacConfig(p["rotation_phase"] + 2 * math.pi, p["with_qwps"]))
    r.results.update({"probability": prob, "closed_form": math.sin(p["rotation_phase"] / 2) ** 2})
    r.check("static_null", abs(null) <= 1e-12, "no light at the observation plane when at rest")
    r.check("two_pi_periodic", abs(prob - shifted) <= 1e-12)
    r.check("closed_form", abs(prob - r.results["closed_form"]) <= 1e-12)
    phases = interferometer.sweep_phases(p["n_phase"])
    probs = [interferometer.sagnac_output(interferometer.SagnacConfig(float(ph), p["with_qwps"]))
             for ph in phases]
    r.csv("sagnac_sweep.csv", ["rotation_phase", "probability"], [phases, probs])
    r.svg("sagnac_sweep.svg", phases, probs, "rotation phase (rad)", "P(observation)", "Sagnac")


def _run_scattering(r: _Run) -> None:
    p = r.params
    geom = scattering.ScatterGeometry(p["d"], p["lambda0"], p["r0"])
    channel = scattering.ScatterChannel(p["channel"])
    flip = scattering.WhichPathOverlap(p["gamma"], p["overlap_phase"])
    overlap = scattering.channel_overlap(channel, flip)
    pattern = scattering.screen_pattern(geom, channel, overlap, p["n"], p["x_max"])
    vis = scattering.pattern_visibility(pattern)
    r.results.update({
        "visibility": vis,
        "marker_overlap_gamma": overlap.gamma,
        "angular_momentum_transfer_hbar": scattering.angular_momentum_transfer(channel),
        "amplitude_at_center": abs(scattering.scatter_amplitude(geom, channel, math.pi / 2, 0.0)),
        "fringe_period": geom.fringe_period,
    })
    norm = np.linalg.norm(scattering.entangled_state(overlap))
    r.check("entangled_state_normalized", abs(norm - 1) <= 1e-12)
    if overlap.phase == 0.0:
        r.check("visibility_equals_gamma", abs(vis - overlap.gamma) <= 1e-9,
                "fringe visibility equals |<s1|s2>|")
    else:
        # sampled extrema shift off the grid when the overlap carries a phase
        r.check("visibility_at_most_gamma", vis <= overlap.gamma + 1e-9)
    r.csv("scatter_profile.csv", ["x", "intensity", "envelope"],
          [pattern.xs, pattern.probability, pattern.envelope])
    r.svg("scatter_profile.svg", pattern.xs, pattern.probability, "x (um)", "P(x) (relative)",
          f"two-particle scattering, channel {p['channel']}")


def _run_uncertainty(r: _Run) -> None:
    p = r.params
    hbar = p["hbar"]
    suite = p["suite"]
    rng = np.random.default_rng(r.seed)
    rows = []
    if suite == "random":
        dims = range(p["dim_min"], p["dim_max"] + 1)
        for res in uncertainty.random_suite(p["n"], r.seed, dims):
            rows.append((res.lhs, res.rhs, res.holds))
    elif suite == "pauli":
        res = uncertainty.uncertainty_check(uncertainty.PAULI_X, uncertainty.PAULI_Y, [1, 0])
        rows.append((res.lhs, res.rhs, res.holds))
        r.check("pauli_equality", abs(res.lhs - 1) <= 1e-10 and abs(res.rhs - 1) <= 1e-10)
    elif suite == "oscillator":
        x, px = uncertainty.oscillator_xp(p["n_levels"], hbar)
        res = uncertainty.uncertainty_check(x, px, uncertainty.fock_state(p["n_levels"]))
        rows.append((res.lhs, res.rhs, res.holds))
        r.check("ground_state_minimum", abs(res.lhs - hbar / 2) <= 1e-8)
    else:
        dims = list(range(p["dim_min"], p["dim_max"] + 1))
        while len(rows) < p["n"]:
            n = int(rng.choice(dims))
            A, H = uncertainty.random_hermitian(n, rng), uncertainty.random_hermitian(n, rng)
            psi = uncertainty.random_state(n, rng)
            if abs(uncertainty.ehrenfest_rate(A, H, psi, hbar)) <= 1e-6:
                continue
            res = uncertainty.energy_time_check(A, H, psi, hbar)
            rows.append((res.delta_E * res.delta_t, hbar / 2, res.holds))
    holds = sum(bool(h) for _, _, h in rows)
    r.results.update({"cases": len(rows), "holds": holds})
    r.check("inequality_holds_everywhere", holds == len(rows), f"{holds}/{len(rows)}")
    r.csv("uncertainty_cases.csv", ["index", "lhs", "rhs", "holds"],
          [list(range(len(rows))), [a for a, _, _ in rows], [b for _, b, _ in rows],
           [str(bool(h)).lower() for _, _, h in rows]])


RUNNERS = {
    "double-slit": _run_double_slit,
    "mach-zehnder": _run_mach_zehnder,
    "sagnac": _run_sagnac,
    "scattering": _run_scattering,
    "uncertainty": _run_uncertainty,
}


def run(config: ScenarioConfig) -> RunReport:
    problems = validate(config)
    if problems:
        raise ConfigError(problems)
    out = Path(config.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".whichpath-write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError([f"output: cannot write to {str(out)!r} ({exc.strerror})"]) from exc
    seed = config.seed if config.seed is not None else 0
    params = resolve_params(config.scenario, config.params)
    r = _Run(config, params, seed)
    RUNNERS[config.scenario](r)
    report = RunReport(config.scenario, _clean(params), seed, _clean(r.results), _clean(r.checks),
                       list(r.artifacts), list(config.formats), si=_clean(r.si) if config.si else None)
    if "report" in config.formats:
        report.artifacts.append("report.json")
        (out / "report.json").write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    return report


def _parse_set(items: list[str]) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise ConfigError([f"--set: expected key=value, got {item!r}"])
        key, raw = item.split("=", 1)
        try:
            out[key.strip()] = json.loads(raw)
        except json.JSONDecodeError:
            out[key.strip()] = raw
    return out


def build_config(args: argparse.Namespace, environ=os.environ) -> ScenarioConfig:
    file_cfg: dict = {}
    if args.config:
        try:
            file_cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError([f"config: cannot read {args.config!r} ({exc})"]) from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError(["config: top level must be a JSON object"])
    scenario = args.scenario
    if "scenario" in file_cfg and file_cfg["scenario"] != scenario:
        raise ConfigError([f"scenario: command line says {scenario!r} but config says {file_cfg['scenario']!r}"])
    params = dict(file_cfg.get("params", {}))
    params.update(_parse_set(args.set or []))
    if args.seed is not None:
        seed = args.seed
    elif "seed" in file_cfg:
        seed = file_cfg["seed"]
    elif environ.get("WHICHPATH_SEED"):
        try:
            seed = int(environ["WHICHPATH_SEED"])
        except ValueError as exc:
            raise ConfigError([f"seed: WHICHPATH_SEED is not an integer ({environ['WHICHPATH_SEED']!r})"]) from exc
    else:
        seed = None
    if args.format:
        formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
    else:
        formats = tuple(file_cfg.get("formats", DEFAULT_FORMATS))
    output = args.out or file_cfg.get("output", ".")
    return ScenarioConfig(scenario, params, output, formats, seed, args.si)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="whichpath", description="Run a which-path interference scenario.")
    ap.add_argument("scenario", help=f"one of: {', '.join(SCENARIOS)}")
    ap.add_argument("--config", help="JSON config file (a previous report.json also works)")
    ap.add_argument("--seed", type=int, help="random seed (overrides config and WHICHPATH_SEED)")
    ap.add_argument("--out", help="output directory")
    ap.add_argument("--format", help="comma-separated subset of csv,svg,report")
    ap.add_argument("--set", action="append", metavar="KEY=VALUE",
                    help="override one parameter; VALUE is parsed as JSON when possible")
    ap.add_argument("--si", action="store_true", help="add SI-unit conversions to the report")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        config = build_config(args)
        report = run(config)
    except ConfigError as exc:
        for v in exc.violations:
            print(f"whichpath: invalid configuration: {v}", file=sys.stderr)
        return EXIT_INVALID
    except (uncertainty.ConsistencyError, ArithmeticError) as exc:
        print(f"whichpath: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    for c in report.checks:
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}")
    return EXIT_OK if report.passed else EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
