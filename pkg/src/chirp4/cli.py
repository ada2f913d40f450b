"""Command-line front end: scenario files, subcommand dispatch, table output.

A scenario is a YAML document resolved into validated model objects::

    system: 85Rb-D1          # preset name, or a mapping of LevelSystem fields
    pulse:
      fwhm: 2.99353          # ns; exactly one of {fwhm, tau0}
      rabi: 3.035            # GHz; exactly one of {rabi, intensity (W/cm^2)}
      chirp: -2.94752        # GHz/ns, default 0
      detuning: 0.0          # GHz, default 0
      t_peak: 0.0            # ns, default 0
    integration:             # optional, IntegrationConfig fields
      rel_tol: 1.0e-10
    sweep:                   # optional axes for the sweep subcommand
      chirps: {start: -5.0, stop: 5.0, count: 101}   # or an explicit list
      fwhms: {start: 1.0, stop: 5.0, count: 81}
    detuning_scan:           # optional axis for the detuning subcommand
      deltas: {start: -30.35, stop: 30.35, count: 101}
    outputs:                 # optional, overridden by --out / --format
      dir: out
      format: csv

Unknown keys anywhere are rejected so a typo cannot silently change the
physics.  Every run writes its artifacts plus a ``report.json`` with the
resolved parameters and run statistics.  All output is deterministic:
byte-identical files for identical inputs, regardless of --threads.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .analysis import adiabaticity_report, compare_yields
from .integrator import IntegrationConfig, propagate
from .model import (
    LevelSystem,
    PulseParams,
    UNVALIDATED_PRESETS,
    fwhm_to_tau0,
    get_preset,
    intensity_to_rabi,
)
from .scans import detuning_scan, sweep_chirp_fwhm

__all__ = ["Scenario", "ScenarioError", "parse_scenario", "dispatch", "emit_table", "main"]

SUBCOMMANDS = ("trace", "sweep", "detuning", "compare3", "check")

DEFAULT_SWEEP_CHIRPS = {"start": -5.0, "stop": 5.0, "count": 101}
DEFAULT_SWEEP_FWHMS = {"start": 1.0, "stop": 5.0, "count": 81}
DEFAULT_DETUNING_MULTIPLE = 10.0  # scan +/- 10 OmegaR when no axis is given
DEFAULT_DETUNING_COUNT = 101


class ScenarioError(ValueError):
    """Configuration document is invalid; message names the offending field."""


@dataclass(frozen=True, eq=False)
class Scenario:
    """A fully resolved run description."""

    system: LevelSystem
    pulse: PulseParams
    config: IntegrationConfig
    sweep_chirps: np.ndarray = field(repr=False, default=None)
    sweep_fwhms: np.ndarray = field(repr=False, default=None)
    deltas: np.ndarray = field(repr=False, default=None)
    out_dir: str = "."
    table_format: str = "csv"
    unvalidated: bool = False


def _require_mapping(obj, name):
    if not isinstance(obj, dict):
        raise ScenarioError(f"{name} must be a mapping, got {type(obj).__name__}")
    return obj


def _reject_unknown(block, allowed, name):
    unknown = sorted(set(block) - set(allowed))
    if unknown:
        raise ScenarioError(f"unknown key(s) in {name}: {', '.join(map(str, unknown))}")


def _number(block, key, name, default=None):
    if key not in block or block[key] is None:
        if default is None and key in block:
            return None
        return default
    value = block[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{name}.{key} must be a number, got {value!r}")
    return float(value)


def _parse_system(raw):
    if isinstance(raw, str):
        try:
            system = get_preset(raw)
        except KeyError as err:
            raise ScenarioError(str(err).strip("'\"")) from None
        return system, raw in UNVALIDATED_PRESETS
    block = _require_mapping(raw, "system")
    _reject_unknown(block, ("omega21", "omega43", "dipole", "n_levels", "label"), "system")
    for key in ("omega21", "omega43", "dipole"):
        if key not in block or block[key] is None:
            raise ScenarioError(f"system.{key} is required for a custom system")
    try:
        system = LevelSystem(
            omega21=_number(block, "omega21", "system"),
            omega43=_number(block, "omega43", "system"),
            dipole=_number(block, "dipole", "system"),
            n_levels=int(block.get("n_levels", 4)),
            label=str(block.get("label", "custom")),
        )
    except ValueError as err:
        raise ScenarioError(f"system: {err}") from None
    return system, True


def _parse_pulse(raw, system):
    block = _require_mapping(raw, "pulse")
    _reject_unknown(
        block, ("tau0", "fwhm", "rabi", "intensity", "chirp", "detuning", "t_peak"), "pulse"
    )

    width_keys = [k for k in ("tau0", "fwhm") if k in block]
    if len(width_keys) == 0:
        raise ScenarioError("pulse: one of tau0 or fwhm is required")
    if len(width_keys) == 2:
        raise ScenarioError("pulse: tau0 and fwhm are mutually exclusive; give exactly one")
    amp_keys = [k for k in ("rabi", "intensity") if k in block]
    if len(amp_keys) == 0:
        raise ScenarioError("pulse: one of rabi or intensity is required")
    if len(amp_keys) == 2:
        raise ScenarioError("pulse: rabi and intensity are mutually exclusive; give exactly one")

    width = _number(block, width_keys[0], "pulse")
    amp = _number(block, amp_keys[0], "pulse")
    if width is None or amp is None:
        raise ScenarioError("pulse: width and amplitude values must be numbers")
    try:
        tau0 = width if width_keys[0] == "tau0" else fwhm_to_tau0(width)
        rabi = amp if amp_keys[0] == "rabi" else intensity_to_rabi(amp, system.dipole)
        return PulseParams(
            rabi_peak=rabi,
            tau0=tau0,
            chirp=_number(block, "chirp", "pulse", 0.0),
            detuning=_number(block, "detuning", "pulse", 0.0),
            t_peak=_number(block, "t_peak", "pulse", 0.0),
        )
    except ValueError as err:
        raise ScenarioError(f"pulse: {err}") from None


def _parse_integration(raw):
    if raw is None:
        return IntegrationConfig()
    block = _require_mapping(raw, "integration")
    allowed = ("window_sigmas", "rel_tol", "abs_tol", "max_step", "n_samples")
    _reject_unknown(block, allowed, "integration")
    kwargs = {}
    for key in allowed:
        if key in block:
            if key == "n_samples":
                kwargs[key] = int(block[key])
            else:
                kwargs[key] = _number(block, key, "integration")
    try:
        return IntegrationConfig(**kwargs)
    except ValueError as err:
        raise ScenarioError(f"integration: {err}") from None


def _parse_axis(raw, name):
    """An axis is either an explicit list or a {start, stop, count} mapping."""
    if isinstance(raw, (list, tuple)):
        if not raw:
            raise ScenarioError(f"{name} must be nonempty")
        values = []
        for v in raw:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ScenarioError(f"{name} entries must be numbers, got {v!r}")
            values.append(float(v))
        return np.asarray(values)
    block = _require_mapping(raw, name)
    _reject_unknown(block, ("start", "stop", "count"), name)
    for key in ("start", "stop", "count"):
        if key not in block:
            raise ScenarioError(f"{name}.{key} is required")
    count = int(block["count"])
    if count < 1:
        raise ScenarioError(f"{name}.count must be >= 1, got {count}")
    return np.linspace(_number(block, "start", name), _number(block, "stop", name), count)


def parse_scenario(text: str) -> Scenario:
    """Parse and resolve a YAML scenario document.

    Raises ScenarioError with the offending field name on any constraint
    violation, ambiguity, or unknown key; YAML syntax errors propagate
    with line information.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as err:
        raise ScenarioError(f"config syntax error: {err}") from None
    doc = _require_mapping(doc if doc is not None else {}, "scenario")
    _reject_unknown(
        doc,
        ("system", "pulse", "integration", "sweep", "detuning_scan", "outputs"),
        "scenario",
    )
    for key in ("system", "pulse"):
        if key not in doc:
            raise ScenarioError(f"scenario.{key} is required")

    system, unvalidated = _parse_system(doc["system"])
    pulse = _parse_pulse(doc["pulse"], system)
    config = _parse_integration(doc.get("integration"))

    chirps = fwhms = deltas = None
    if "sweep" in doc:
        block = _require_mapping(doc["sweep"], "sweep")
        _reject_unknown(block, ("chirps", "fwhms"), "sweep")
        if "chirps" in block:
            chirps = _parse_axis(block["chirps"], "sweep.chirps")
        if "fwhms" in block:
            fwhms = _parse_axis(block["fwhms"], "sweep.fwhms")
            if np.any(fwhms <= 0):
                raise ScenarioError("sweep.fwhms must be > 0")
    if "detuning_scan" in doc:
        block = _require_mapping(doc["detuning_scan"], "detuning_scan")
        _reject_unknown(block, ("deltas",), "detuning_scan")
        if "deltas" in block:
            deltas = _parse_axis(block["deltas"], "detuning_scan.deltas")

    out_dir, table_format = ".", "csv"
    if "outputs" in doc:
        block = _require_mapping(doc["outputs"], "outputs")
        _reject_unknown(block, ("dir", "format"), "outputs")
        out_dir = str(block.get("dir", out_dir))
        table_format = str(block.get("format", table_format))
        if table_format not in ("csv", "json"):
            raise ScenarioError(f"outputs.format must be csv or json, got {table_format!r}")

    return Scenario(
        system=system,
        pulse=pulse,
        config=config,
        sweep_chirps=chirps,
        sweep_fwhms=fwhms,
        deltas=deltas,
        out_dir=out_dir,
        table_format=table_format,
        unvalidated=unvalidated,
    )


def _fmt(value) -> str:
    """One table cell: 12 significant digits, stable across runs."""
    if isinstance(value, str):
        return value
    x = float(value)
    if x == 0.0:
        return "0"
    return f"{x:.12g}"


def emit_table(rows, header, fmt: str = "csv") -> bytes:
    """Serialize a rectangular table deterministically.

    Numbers are printed with 12 significant digits, lines end with LF,
    and the header row is always present.  The json variant carries the
    same formatted cell strings as {"header": [...], "rows": [[...]]}.
    """
    header = [str(h) for h in header]
    width = len(header)
    formatted = []
    for i, row in enumerate(rows):
        cells = [_fmt(v) for v in row]
        if len(cells) != width:
            raise ValueError(f"row {i} has {len(cells)} fields, header has {width}")
        formatted.append(cells)
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(cells) for cells in formatted]
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        doc = {"header": header, "rows": formatted}
        return (json.dumps(doc, indent=2) + "\n").encode()
    raise ValueError(f"unknown table format {fmt!r}")


def _scenario_metadata(scenario: Scenario) -> dict:
    return {
        "system": {
            "label": scenario.system.label,
            "omega21_GHz": scenario.system.omega21,
            "omega43_GHz": scenario.system.omega43,
            "dipole_Cm": scenario.system.dipole,
            "n_levels": scenario.system.n_levels,
            "unvalidated": scenario.unvalidated,
        },
        "pulse": {
            "rabi_peak_GHz": scenario.pulse.rabi_peak,
            "tau0_ns": scenario.pulse.tau0,
            "fwhm_ns": scenario.pulse.fwhm,
            "chirp_GHz_per_ns": scenario.pulse.chirp,
            "detuning_GHz": scenario.pulse.detuning,
            "t_peak_ns": scenario.pulse.t_peak,
        },
        "integration": {
            "window_sigmas": scenario.config.window_sigmas,
            "rel_tol": scenario.config.rel_tol,
            "abs_tol": scenario.config.abs_tol,
            "max_step_ns": scenario.config.max_step,
            "n_samples": scenario.config.n_samples,
        },
        "version": __version__,
    }


def _write(out_dir: Path, name: str, data: bytes) -> str:
    path = out_dir / name
    path.write_bytes(data)
    return name


def _write_report(out_dir: Path, payload: dict) -> str:
    data = (json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n").encode()
    return _write(out_dir, "report.json", data)


def _population_header(n_levels: int) -> list:
    return [f"P{i}" for i in range(1, n_levels + 1)]


def _table_name(stem: str, fmt: str) -> str:
    return f"{stem}.{'json' if fmt == 'json' else 'csv'}"


def _cmd_trace(scenario: Scenario, out_dir: Path, threads) -> dict:
    traj = propagate(scenario.system, scenario.pulse, scenario.config)
    norms = traj.populations.sum(axis=1)
    rows = [
        [t, *pops, norm]
        for t, pops, norm in zip(traj.times, traj.populations, norms)
    ]
    header = ["t_ns", *_population_header(scenario.system.n_levels), "norm"]
    name = _table_name("trace", scenario.table_format)
    files = [_write(out_dir, name, emit_table(rows, header, scenario.table_format))]
    final = traj.final_state.populations()
    return {
        "files": files,
        "final_populations": [float(p) for p in final],
        "norm_drift": traj.norm_drift,
    }


def _default_axis(bounds: dict) -> np.ndarray:
    return np.linspace(bounds["start"], bounds["stop"], bounds["count"])


def _cmd_sweep(scenario: Scenario, out_dir: Path, threads) -> dict:
    chirps = scenario.sweep_chirps
    if chirps is None:
        chirps = _default_axis(DEFAULT_SWEEP_CHIRPS)
    fwhms = scenario.sweep_fwhms
    if fwhms is None:
        fwhms = _default_axis(DEFAULT_SWEEP_FWHMS)
    grid = sweep_chirp_fwhm(
        scenario.system, scenario.pulse, chirps, fwhms, scenario.config, threads=threads
    )

    rows = []
    for i, w in enumerate(grid.y_axis):
        for j, a in enumerate(grid.x_axis):
            rows.append([a, w, *grid.cells[i, j, :], grid.status[i, j]])
    n = scenario.system.n_levels
    header = ["chirp_GHz_per_ns", "fwhm_ns", *_population_header(n), "status"]
    name = _table_name("sweep", scenario.table_format)
    files = [_write(out_dir, name, emit_table(rows, header, scenario.table_format))]

    # one row-major matrix file per level: rows follow fwhms, columns chirps
    grid_header = ["fwhm_ns", *[_fmt(a) for a in grid.x_axis]]
    for level in range(1, n + 1):
        matrix_rows = [
            [w, *grid.cells[i, :, level - 1]] for i, w in enumerate(grid.y_axis)
        ]
        files.append(
            _write(
                out_dir,
                _table_name(f"sweep_grid_P{level}", scenario.table_format),
                emit_table(matrix_rows, grid_header, scenario.table_format),
            )
        )
    return {
        "files": files,
        "grid_shape": [int(fwhms.size), int(chirps.size)],
        "failed_cells": grid.n_failed(),
    }


def _cmd_detuning(scenario: Scenario, out_dir: Path, threads) -> dict:
    deltas = scenario.deltas
    if deltas is None:
        span = DEFAULT_DETUNING_MULTIPLE * scenario.pulse.rabi_peak
        if span <= 0:
            raise ScenarioError(
                "detuning_scan.deltas is required when the pulse has zero amplitude"
            )
        deltas = np.linspace(-span, span, DEFAULT_DETUNING_COUNT)
    grid = detuning_scan(scenario.system, scenario.pulse, deltas, scenario.config, threads=threads)
    rows = [
        [d, *grid.cells[0, j, :], grid.status[0, j]] for j, d in enumerate(grid.x_axis)
    ]
    header = ["delta_GHz", *_population_header(scenario.system.n_levels), "status"]
    name = _table_name("detuning", scenario.table_format)
    files = [_write(out_dir, name, emit_table(rows, header, scenario.table_format))]
    return {"files": files, "n_points": int(deltas.size), "failed_cells": grid.n_failed()}


def _json_number(x: float):
    """Strict JSON has no inf/nan literals; spell those out as strings."""
    x = float(x)
    return x if math.isfinite(x) else repr(x)


def _cmd_compare3(scenario: Scenario, out_dir: Path, threads) -> dict:
    report = compare_yields(scenario.system, scenario.pulse, scenario.config)
    return {
        "files": [],
        "comparison": {
            "p_final_4lvl": list(report.p_final_4lvl),
            "p_final_3lvl": list(report.p_final_3lvl),
            "delta_p2": report.delta_p2,
            "chirp_ratio": _json_number(report.chirp_ratio),
            "chirp_flag": report.chirp_flag,
            "chirp_strong": report.chirp_strong,
            "rabi_ratio": _json_number(report.rabi_ratio),
            "rabi_flag": report.rabi_flag,
            "rabi_strong": report.rabi_strong,
            "valid": report.valid(),
        },
    }


def _cmd_check(scenario: Scenario, out_dir: Path, threads) -> dict:
    report = adiabaticity_report(scenario.system, scenario.pulse)
    return {
        "files": [],
        "adiabaticity": {
            "chirp_bandwidth_product": report.chirp_bandwidth_product,
            "chirp_condition_met": report.chirp_condition_met,
            "lz_ratio": _json_number(report.lz_ratio),
            "lz_condition_met": report.lz_condition_met,
            "lz_strong": report.lz_strong,
            "spectral_width": report.spectral_width,
            "broadband_flag": report.broadband_flag,
        },
    }


_COMMANDS = {
    "trace": _cmd_trace,
    "sweep": _cmd_sweep,
    "detuning": _cmd_detuning,
    "compare3": _cmd_compare3,
    "check": _cmd_check,
}


def dispatch(subcommand: str, scenario: Scenario, threads: int | None = None) -> int:
    """Run one subcommand, writing its artifacts plus report.json.

    Returns a process exit status: 0 on success, 1 on failure (after
    printing a diagnostic to stderr).
    """
    if subcommand not in _COMMANDS:
        print(f"error: unknown subcommand {subcommand!r}", file=sys.stderr)
        return 2
    out_dir = Path(scenario.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        result = _COMMANDS[subcommand](scenario, out_dir, threads)
        payload = {
            "subcommand": subcommand,
            "scenario": _scenario_metadata(scenario),
            **result,
        }
        _write_report(out_dir, payload)
    except (OSError, ScenarioError, ValueError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


def _parse_grid_flag(text: str):
    for sep in ("x", "X", "×"):
        if sep in text:
            left, _, right = text.partition(sep)
            try:
                nx, ny = int(left), int(right)
            except ValueError:
                break
            if nx < 1 or ny < 1:
                break
            return nx, ny
    raise argparse.ArgumentTypeError(f"expected NXxNY with positive integers, got {text!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="chirp4",
        description="Population transfer in a chirped-pulse driven 4-level atom.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, help="scenario YAML path")
    parser.add_argument("--out", default=None, help="output directory (default: scenario or .)")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for grid scans")
    parser.add_argument(
        "--grid",
        type=_parse_grid_flag,
        default=None,
        metavar="NXxNY",
        help="sweep resolution: NX chirp points x NY FWHM points",
    )
    parser.add_argument("--format", choices=("csv", "json"), default=None, help="table format")
    args = parser.parse_args(argv)

    try:
        text = Path(args.config).read_text()
    except OSError as err:
        print(f"error: cannot read config: {err}", file=sys.stderr)
        return 1
    try:
        scenario = parse_scenario(text)
    except ScenarioError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1

    updates = {}
    if args.out is not None:
        updates["out_dir"] = args.out
    if args.format is not None:
        updates["table_format"] = args.format
    if args.grid is not None:
        nx, ny = args.grid
        chirps = scenario.sweep_chirps
        fwhms = scenario.sweep_fwhms
        c0, c1 = (
            (chirps[0], chirps[-1])
            if chirps is not None
            else (DEFAULT_SWEEP_CHIRPS["start"], DEFAULT_SWEEP_CHIRPS["stop"])
        )
        w0, w1 = (
            (fwhms[0], fwhms[-1])
            if fwhms is not None
            else (DEFAULT_SWEEP_FWHMS["start"], DEFAULT_SWEEP_FWHMS["stop"])
        )
        updates["sweep_chirps"] = np.linspace(c0, c1, nx)
        updates["sweep_fwhms"] = np.linspace(w0, w1, ny)
    if updates:
        from dataclasses import replace as _replace

        scenario = _replace(scenario, **updates)

    return dispatch(args.subcommand, scenario, threads=args.threads)


if __name__ == "__main__":
    sys.exit(main())
