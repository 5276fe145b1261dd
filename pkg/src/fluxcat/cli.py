"""Sweep runner: ``simulate <experiment> --config sweep.json [--out table.csv] [--jobs N]``.

A config is a JSON object::

    {
      "experiment": "bitflip",                      # optional, must match the CLI argument
      "fixed": {"E_c": 0.1, "E_l": 0.1, "kT": 1.0},
      "sweep": {"name": "E_j", "start": 2, "stop": 6, "count": 5, "scale": "linear"},
      "numerics": {"n_points": 801},
      "out": "bitflip.csv",
      "jobs": 4
    }

``sweep`` may also be ``{"name": ..., "values": [...]}`` or a list of such
objects, in which case the Cartesian product is run. Energies are in h*GHz,
times in ns and temperatures as ``kT`` in h*GHz. A value may also be given as
a string with a unit, e.g. ``"250 MHz"`` or ``"50 ps"``.

Rows are written in sweep order, one per point; failed points carry their
error message and make the exit status nonzero. A JSON manifest with the
config hash is written next to the table.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import itertools
import json
import math
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError

__all__ = ["SweepConfig", "SweepResult", "EXPERIMENTS", "validate_config", "run_sweep", "main"]

JOBS_ENV = "FLUXCAT_JOBS"

# parameter kinds: energy and time take units; positive/nonneg constrain the sign
ENERGY, TIME, ANGLE, RATIO = "energy", "time", "angle", "ratio"
UNITS = {
    ENERGY: {"ghz": 1.0, "mhz": 1e-3, "khz": 1e-6},
    TIME: {"ns": 1.0, "ps": 1e-3, "us": 1e3},
    ANGLE: {"rad": 1.0, "pi": math.pi},
    RATIO: {},
}


@dataclass(frozen=True)
class Param:
    kind: str
    default: float | None = None  # None = required
    sign: str = "positive"  # positive | nonneg | any
    optional: bool = False  # may stay unset


def _p(kind, default=None, sign="positive", optional=False):
    return Param(kind, default, sign, optional)


FLUXONIUM = {"E_c": _p(ENERGY), "E_l": _p(ENERGY), "E_j": _p(ENERGY)}
BATH = {"kT": _p(ENERGY, 1.0), "x2": _p(RATIO, 1e-5, "nonneg")}


@dataclass(frozen=True)
class Experiment:
    params: dict
    numerics: dict
    primary: str
    refine: dict = field(default_factory=dict)  # numerics overrides for --verify-convergence
    atol: float = 0.0  # absolute floor for the convergence check of ``primary``


EXPERIMENTS = {
    "phase_diagram": Experiment(
        {**FLUXONIUM, "E_l": _p(ENERGY, 1.0)}, {"theta_domain": "squeeze"}, "alpha_opt"),
    "overlap": Experiment(FLUXONIUM, {"dim": 150, "theta": "full"}, "overlap", {"dim": 200}),
    "splitting": Experiment(
        FLUXONIUM, {"basis": "fock", "dim": 150, "n_points": 1601, "phi_max": 4 * math.pi}, "eps01",
        {"dim": 220, "n_points": 3201}),
    "bitflip": Experiment(
        {**FLUXONIUM, **BATH, "delta_phi_e": _p(ANGLE, 0.03 * math.pi, "any")},
        {"n_points": 801, "phi_max": 2 * math.pi, "k": 0, "n_delocalized": 5, "k_max": 40}, "x2_T_over_tau0",
        {"n_points": 1201, "n_delocalized": 6}),
    "phaseflip": Experiment(
        {**FLUXONIUM, **BATH, "delta_phi_e": _p(ANGLE, 0.03 * math.pi, "any")},
        {"n_points": 801, "phi_max": 2 * math.pi, "k": 0, "n_delocalized": 5, "k_max": 40}, "x2_T_over_tau0",
        {"n_points": 1201, "n_delocalized": 6}),
    "lindblad_spectrum": Experiment(
        {**FLUXONIUM, **BATH, "delta_phi_e": _p(ANGLE, 0.03 * math.pi, "any")},
        {"n_points": 801, "phi_max": 2 * math.pi, "k": 0, "n_delocalized": 5, "k_max": 40, "m": 4},
        "x2_over_gap", {"n_points": 1201, "n_delocalized": 6}),
    "xgate": Experiment(
        {"E_c": _p(ENERGY), "E_l": _p(ENERGY), "E_j_max": _p(ENERGY), "E_j_min": _p(ENERGY, 0.0, "nonneg"),
         "t_rise": _p(TIME, 0.05, "nonneg"), "hold": _p(TIME, None, "nonneg", optional=True)},
        {"dim": 120, "steps_per_period": 50, "shape": "linear"}, "gate_error", {"dim": 160, "steps_per_period": 100},
        atol=1e-5),
    "cos2theta_lifetimes": Experiment(
        {"E_j2": _p(ENERGY), "E_c": _p(ENERGY), "E_j1": _p(ENERGY, None, "nonneg", optional=True),
         "bias_ratio": _p(RATIO, 0.03, "nonneg"), **BATH},
        {"n_max": 30, "k": 0, "n_delocalized": 5, "k_max": 40}, "x2_T_bf_over_tau0", {"n_max": 40}),
    "qps_pair": Experiment(
        {"E_c_node": _p(ENERGY), "E_q": _p(ENERGY), "E_j": _p(ENERGY), "cross": _p(RATIO, -1.0, "any")},
        {"n_max": 12}, "g", {"n_max": 16}),
}

TOP_KEYS = {"experiment", "fixed", "sweep", "numerics", "out", "jobs"}


@dataclass(frozen=True)
class SweepAxis:
    name: str
    values: tuple


@dataclass(frozen=True)
class SweepConfig:
    experiment: str
    fixed: dict
    axes: tuple
    numerics: dict
    out: str | None = None
    jobs: int | None = None

    def points(self) -> list[dict]:
        grids = itertools.product(*[a.values for a in self.axes])
        return [{**self.fixed, **dict(zip([a.name for a in self.axes], combo))} for combo in grids]

    def canonical(self) -> dict:
        return {"experiment": self.experiment, "fixed": self.fixed,
                "sweep": [{"name": a.name, "values": list(a.values)} for a in self.axes],
                "numerics": self.numerics}

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class SweepResult:
    rows: list
    manifest: dict

    @property
    def n_failed(self) -> int:
        return sum(1 for r in self.rows if r.get("error"))


# --- validation -------------------------------------------------------------------------

_UNIT_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*\*?\s*([A-Za-z]+)\s*$")


def _quantity(value, kind, where, errors):
    """Number, or ``"<number> <unit>"`` converted to the canonical unit of ``kind``."""
    if isinstance(value, bool):
        errors.append(f"{where}: expected a number, got a boolean")
        return None
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            errors.append(f"{where}: must be finite")
            return None
        return float(value)
    if isinstance(value, str):
        m = _UNIT_RE.match(value)
        if not m:
            errors.append(f"{where}: cannot parse {value!r} as a quantity")
            return None
        try:
            num = float(m.group(1))
        except ValueError:
            errors.append(f"{where}: cannot parse {value!r} as a quantity")
            return None
        unit = m.group(2).lower()
        table = UNITS[kind]
        if unit not in table:
            allowed = ", ".join(table) or "none (dimensionless)"
            errors.append(f"{where}: unit {m.group(2)!r} is not a valid {kind} unit; allowed: {allowed}")
            return None
        return num * table[unit]
    errors.append(f"{where}: expected a number, got {type(value).__name__}")
    return None


def _check_sign(v, param, where, errors):
    if v is None:
        return
    if param.sign == "positive" and not v > 0:
        errors.append(f"{where}: must be positive, got {v}")
    elif param.sign == "nonneg" and v < 0:
        errors.append(f"{where}: must be nonnegative, got {v}")


def _axis(obj, i, exp, errors):
    where = f"sweep[{i}]"
    if not isinstance(obj, dict):
        errors.append(f"{where}: must be an object")
        return None
    extra = set(obj) - {"name", "values", "start", "stop", "count", "scale"}
    if extra:
        errors.append(f"{where}: unknown keys {sorted(extra)}")
    name = obj.get("name")
    if name is None:
        errors.append(f"{where}.name: required")
        return None
    if name not in exp.params:
        errors.append(f"{where}.name: {name!r} is not a parameter of this experiment; "
                      f"choose from {sorted(exp.params)}")
        return None
    param = exp.params[name]
    if "values" in obj:
        if any(k in obj for k in ("start", "stop", "count")):
            errors.append(f"{where}: give either values or start/stop/count, not both")
        vals = obj["values"]
        if not isinstance(vals, list) or not vals:
            errors.append(f"{where}.values: must be a nonempty list")
            return None
        out = [_quantity(v, param.kind, f"{where}.values[{j}]", errors) for j, v in enumerate(vals)]
    else:
        missing = [k for k in ("start", "stop", "count") if k not in obj]
        if missing:
            errors.append(f"{where}: missing {missing} (or give values)")
            return None
        lo = _quantity(obj["start"], param.kind, f"{where}.start", errors)
        hi = _quantity(obj["stop"], param.kind, f"{where}.stop", errors)
        count = obj["count"]
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            errors.append(f"{where}.count: must be a positive integer")
            return None
        scale = obj.get("scale", "linear")
        if scale not in ("linear", "log"):
            errors.append(f"{where}.scale: must be 'linear' or 'log'")
            return None
        if lo is None or hi is None:
            return None
        if scale == "log":
            if lo <= 0 or hi <= 0:
                errors.append(f"{where}: log scale needs positive bounds")
                return None
            out = np.geomspace(lo, hi, count).tolist()
        else:
            out = np.linspace(lo, hi, count).tolist()
    for j, v in enumerate(out):
        _check_sign(v, param, f"{where}.values[{j}] ({name})", errors)
    return SweepAxis(name, tuple(out))


def validate_config(text: str, experiment: str | None = None) -> SweepConfig:
    """Parse and check a JSON config; raises :class:`ConfigError` listing every problem."""
    errors = []
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"invalid JSON: {exc}"]) from None
    if not isinstance(raw, dict):
        raise ConfigError(["config must be a JSON object"])
    extra = set(raw) - TOP_KEYS
    if extra:
        errors.append(f"unknown keys {sorted(extra)}")
    name = raw.get("experiment", experiment)
    if experiment is not None and name != experiment:
        errors.append(f"experiment: config says {name!r} but {experiment!r} was requested")
    if name not in EXPERIMENTS:
        errors.append(f"experiment: {name!r} is not one of {sorted(EXPERIMENTS)}")
        raise ConfigError(errors)
    exp = EXPERIMENTS[name]

    fixed_raw = raw.get("fixed", {})
    if not isinstance(fixed_raw, dict):
        errors.append("fixed: must be an object")
        fixed_raw = {}
    fixed = {}
    for key, value in fixed_raw.items():
        if key not in exp.params:
            errors.append(f"fixed.{key}: unknown parameter for {name}; choose from {sorted(exp.params)}")
            continue
        param = exp.params[key]
        v = _quantity(value, param.kind, f"fixed.{key}", errors)
        _check_sign(v, param, f"fixed.{key}", errors)
        fixed[key] = v

    sweep_raw = raw.get("sweep")
    if sweep_raw is None:
        errors.append("sweep: required")
        sweep_raw = []
    axes_raw = sweep_raw if isinstance(sweep_raw, list) else [sweep_raw]
    if isinstance(sweep_raw, list) and not sweep_raw:
        errors.append("sweep: must name at least one parameter")
    axes = [a for a in (_axis(o, i, exp, errors) for i, o in enumerate(axes_raw)) if a is not None]
    names = [a.name for a in axes]
    for dup in sorted({n for n in names if names.count(n) > 1}):
        errors.append(f"sweep: parameter {dup!r} swept twice")
    for a in axes:
        if a.name in fixed:
            errors.append(f"sweep: {a.name!r} is also given in fixed")

    for key, param in exp.params.items():
        if key in fixed or key in names:
            continue
        if param.default is None and not param.optional:
            errors.append(f"fixed.{key}: required")
        else:
            fixed[key] = param.default

    numerics = dict(exp.numerics)
    num_raw = raw.get("numerics", {})
    if not isinstance(num_raw, dict):
        errors.append("numerics: must be an object")
        num_raw = {}
    for key, value in num_raw.items():
        if key not in exp.numerics:
            errors.append(f"numerics.{key}: unknown setting for {name}; choose from {sorted(exp.numerics)}")
            continue
        default = exp.numerics[key]
        if isinstance(default, str):
            if not isinstance(value, str):
                errors.append(f"numerics.{key}: expected a string")
                continue
        elif isinstance(default, int) and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
            errors.append(f"numerics.{key}: expected a nonnegative integer")
            continue
        elif isinstance(default, float) and not (isinstance(value, (int, float)) and value > 0):
            errors.append(f"numerics.{key}: expected a positive number")
            continue
        numerics[key] = value

    out = raw.get("out")
    if out is not None and not isinstance(out, str):
        errors.append("out: must be a path string")
    jobs = raw.get("jobs")
    if jobs is not None and (not isinstance(jobs, int) or isinstance(jobs, bool) or jobs < 1):
        errors.append("jobs: must be a positive integer")
    if errors:
        raise ConfigError(errors)
    return SweepConfig(name, fixed, tuple(axes), numerics, out, jobs)


# --- point runners ----------------------------------------------------------------------

def _circuit(p, E_j=None):
    from .circuits import CircuitParams
    return CircuitParams(p["E_c"], p["E_l"], p["E_j"] if E_j is None else E_j)


def _lifetime_config(num, delta):
    from .lifetimes import LifetimeProtocolConfig
    return LifetimeProtocolConfig(delta_phi_e=delta, phi_max=num["phi_max"], n_points=num["n_points"],
                                  k=num["k"] or None, n_delocalized=num["n_delocalized"], k_max=num["k_max"])


def _run_phase_diagram(p, num):
    from .meanfield import optimize_mean_field, phase_boundary
    r = optimize_mean_field(_circuit(p), theta_domain=num["theta_domain"])
    return {"alpha_opt": r.alpha_opt, "theta_opt": r.theta_opt, "energy": r.energy,
            "symmetry_broken": int(r.symmetry_broken), "boundary_E_j_over_E_l": phase_boundary(p["E_c"] / p["E_l"])}


def _run_overlap(p, num):
    from .meanfield import alpha_prime, ground_overlap
    from .operators import Fock
    c = _circuit(p)
    return {"overlap": ground_overlap(c, Fock(num["dim"]), theta=num["theta"]), "N": alpha_prime(c) ** 2}


def _run_splitting(p, num):
    from .circuits import splitting
    from .meanfield import alpha_prime
    from .operators import Fock, FluxGrid
    c = _circuit(p)
    if num["basis"] == "fock":
        basis = Fock(num["dim"])
    elif num["basis"] == "flux":
        basis = FluxGrid.symmetric(num["phi_max"], num["n_points"])
    else:
        raise ValueError("numerics.basis must be 'fock' or 'flux'")
    eps = splitting(c, basis)
    return {"eps01": eps, "log_eps01": math.log(eps) if eps > 0 else -math.inf, "N": alpha_prime(c) ** 2}


def _lifetime_row(fit, x2, kT):
    from .lifetimes import tau0
    return {"T": fit.T, "x2_T_over_tau0": x2 * fit.T / tau0(kT), "r_squared": fit.r_squared,
            "T_late": fit.T_late, "extrapolated": int(fit.extrapolated)}


def _qubit(p, num):
    from .lifetimes import default_baths, fluxonium_model
    cfg = _lifetime_config(num, p["delta_phi_e"])
    return fluxonium_model(_circuit(p).with_offset(p["delta_phi_e"]), default_baths(p["kT"], p["x2"]), cfg), cfg


def _run_bitflip(p, num):
    from .lifetimes import bitflip_time
    from .lindblad import lindblad_spectrum
    qm, cfg = _qubit(p, num)
    row = _lifetime_row(bitflip_time(None, config=cfg, qubit=qm), p["x2"], p["kT"])
    lam1 = lindblad_spectrum(qm.model, 2)[1]
    row.update(k=qm.model.k, T_spectral=1 / abs(lam1.real) if lam1.real else math.inf)
    return row


def _run_phaseflip(p, num):
    from .lifetimes import phaseflip_time
    qm, cfg = _qubit(p, num)
    row = _lifetime_row(phaseflip_time(None, config=cfg, qubit=qm), p["x2"], p["kT"])
    row["k"] = qm.model.k
    return row


def _run_lindblad_spectrum(p, num):
    from .lindblad import lindblad_spectrum
    qm, _ = _qubit(p, num)
    lam = lindblad_spectrum(qm.model, num["m"])
    row = {"k": qm.model.k}
    for i, v in enumerate(lam):
        row[f"re_lambda{i}"] = v.real
        row[f"im_lambda{i}"] = v.imag
    row["x2_over_gap"] = p["x2"] / abs(lam[1].real) if len(lam) > 1 and lam[1].real else math.inf
    return row


def _run_xgate(p, num):
    from .circuits import CircuitParams
    from .gates import GateSchedule, x_gate_simulate
    from .operators import Fock
    c = CircuitParams(p["E_c"], p["E_l"], p["E_j_max"])
    sched = GateSchedule(p["E_j_max"], p["E_j_min"], p["t_rise"], p.get("hold"), num["shape"])
    r = x_gate_simulate(c, sched, Fock(num["dim"]), steps_per_period=num["steps_per_period"])
    return {"gate_error": r.error, "fidelity": r.fidelity, "gate_time": r.gate_time,
            "separation_ratio": r.separation_ratio, "norm_drift": r.norm_drift}


def _run_cos2theta(p, num):
    from .circuits import Cos2ThetaParams
    from .lifetimes import (
        LifetimeProtocolConfig, bitflip_time, cos2theta_model, default_baths, phaseflip_time, tau0,
    )
    e_j1 = p.get("E_j1")
    if e_j1 is None:
        e_j1 = p["bias_ratio"] * p["E_j2"]
    params = Cos2ThetaParams(E_j2=p["E_j2"], E_c=p["E_c"], E_j1=e_j1)
    cfg = LifetimeProtocolConfig(n_max=num["n_max"], k=num["k"] or None, n_delocalized=num["n_delocalized"],
                                 k_max=num["k_max"])
    qm = cos2theta_model(params, default_baths(p["kT"], p["x2"], ("cos_theta", "charge")), cfg)
    bf = bitflip_time(None, config=cfg, qubit=qm)
    pf = phaseflip_time(None, config=cfg, qubit=qm)
    scale = p["x2"] / tau0(p["kT"])
    return {"E_j1_used": e_j1, "k": qm.model.k, "T_bf": bf.T, "T_pf": pf.T, "x2_T_bf_over_tau0": scale * bf.T,
            "x2_T_pf_over_tau0": scale * pf.T, "r_squared_bf": bf.r_squared, "r_squared_pf": pf.r_squared}


def _run_qps_pair(p, num):
    from .circuits import QpsPairParams, qps_xx_coupling
    from .operators import Rotor
    r = qps_xx_coupling(QpsPairParams(p["E_c_node"], p["E_q"], p["E_j"], p["cross"]), Rotor(num["n_max"]))
    return {k: r[k] for k in ("g", "h1", "h3", "c0", "residual")}


RUNNERS = {
    "phase_diagram": _run_phase_diagram, "overlap": _run_overlap, "splitting": _run_splitting,
    "bitflip": _run_bitflip, "phaseflip": _run_phaseflip, "lindblad_spectrum": _run_lindblad_spectrum,
    "xgate": _run_xgate, "cos2theta_lifetimes": _run_cos2theta, "qps_pair": _run_qps_pair,
}


def _run_point(args):
    experiment, index, point, numerics, verify = args
    row = {"index": index, **{k: v for k, v in point.items() if v is not None}}
    try:
        out = RUNNERS[experiment](point, numerics)
        row.update(out)
        if verify:
            exp = EXPERIMENTS[experiment]
            fine = RUNNERS[experiment](point, {**numerics, **exp.refine})[exp.primary]
            coarse = out[exp.primary]
            rel = abs(fine - coarse) / max(abs(fine), 1e-300)
            row["refined_rel_change"] = rel
            row["converged"] = int(rel <= 1e-3 or abs(fine - coarse) <= exp.atol)
        row["error"] = ""
    except Exception as exc:  # recorded per point, surfaced through the exit status
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError([f"{JOBS_ENV} must be an integer, got {env!r}"]) from None
    return 1


def run_sweep(config: SweepConfig, *, jobs: int | None = None, verify_convergence: bool = False) -> SweepResult:
    """Run every point of ``config``; rows come back in sweep order whatever ``jobs`` is."""
    jobs = jobs or config.jobs or default_jobs()
    tasks = [(config.experiment, i, pt, config.numerics, verify_convergence) for i, pt in enumerate(config.points())]
    start = time.perf_counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_point, tasks))
    else:
        rows = [_run_point(t) for t in tasks]
    rows.sort(key=lambda r: r["index"])
    manifest = {
        "experiment": config.experiment,
        "config_sha256": config.digest(),
        "config": config.canonical(),
        "version": __version__,
        "n_points": len(rows),
        "n_failed": sum(1 for r in rows if r["error"]),
        "wall_time_s": time.perf_counter() - start,
        "jobs": jobs,
    }
    if verify_convergence:
        manifest["not_converged"] = [r["index"] for r in rows if not r["error"] and not r.get("converged")]
    return SweepResult(rows, manifest)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return int(v)
    return v


def write_results(result: SweepResult, out: Path) -> Path:
    out.parent.mkdir(parents=True, exist_ok=True)
    columns = []
    for r in result.rows:
        columns.extend(k for k in r if k not in columns)
    # error last so successful columns line up
    columns = [c for c in columns if c != "error"] + ["error"]
    with open(out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in result.rows:
            w.writerow({k: _fmt(r.get(k, "")) for k in columns})
    manifest_path = out.with_suffix(".manifest.json")
    manifest_path.write_text(json.dumps(result.manifest, indent=2, sort_keys=True) + "\n")
    return manifest_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="simulate", description="Run a fluxcat parameter sweep.")
    parser.add_argument("experiment", choices=sorted(EXPERIMENTS))
    parser.add_argument("--config", required=True, type=Path, help="JSON sweep config")
    parser.add_argument("--out", type=Path, help="CSV path (default: config 'out' or <experiment>.csv)")
    parser.add_argument("--jobs", type=int, help=f"worker processes (default: ${JOBS_ENV} or 1)")
    parser.add_argument("--verify-convergence", action="store_true",
                        help="rerun each point with refined numerics and flag changes above 1e-3")
    args = parser.parse_args(argv)
    try:
        config = validate_config(args.config.read_text(), args.experiment)
        if args.jobs is not None and args.jobs < 1:
            raise ConfigError(["--jobs must be a positive integer"])
        result = run_sweep(config, jobs=args.jobs, verify_convergence=args.verify_convergence)
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = args.out or Path(config.out or f"{config.experiment}.csv")
    manifest = write_results(result, out)
    n_bad = result.manifest["n_failed"]
    print(f"{len(result.rows)} points, {n_bad} failed -> {out} ({manifest.name})")
    for r in result.rows:
        if r["error"]:
            print(f"  point {r['index']}: {r['error']}", file=sys.stderr)
    return 1 if n_bad else 0


if __name__ == "__main__":
    sys.exit(main())
