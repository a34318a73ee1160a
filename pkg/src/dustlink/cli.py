"""Command line surface: storm sweeps, margin reports, threshold tables, plots.

Four subcommands:

* ``sweep``       attenuation/margin table over one swept variable, as CSV
* ``margin``      single-point link report (human readable + one CSV row)
* ``thresholds``  critical visibility / particle radius grid over both band
                  presets, both scenarios and the configured humidities
* ``plot``        render a sweep CSV as a static vector image

Configuration is a single JSON document; unknown keys are rejected so typos
in physics constants surface immediately. A fixed set of flags overrides the
most common fields. CSV output is deterministic: same config and seed, same
bytes. Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .attenuation import StormProfile, specific_attenuation, visibility_at_height
from .linkbudget import (
    PRESETS,
    BandPreset,
    RadioConfig,
    evaluate_link,
    max_allowed_excess_loss,
    noise_power_dbm,
    system_noise_temperature,
    threshold_particle_radius,
    threshold_visibility,
)
from .pathloss import (
    DistanceMode,
    LinkGeometry,
    Scenario,
    ScenarioKind,
    sample_shadowing_db,
)
from .permittivity import humidity_adjusted_permittivity

__all__ = ["main", "run", "ConfigError", "CliIOError", "SWEEP_COLUMNS", "THRESHOLD_COLUMNS"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

SWEEP_COLUMNS = (
    "band",
    "scenario",
    "humidity_pct",
    "height_m",
    "visibility_km",
    "particle_radius_um",
    "frequency_ghz",
    "attenuation_db_per_km",
    "baseline_loss_db",
    "modified_loss_db",
    "margin_db",
    "link_ok",
)
THRESHOLD_COLUMNS = (
    "band",
    "scenario",
    "humidity_pct",
    "critical_visibility_km",
    "critical_particle_radius_um",
)
NO_FAILURE = "no-failure"

SWEEP_VARIABLES = ("visibility", "particle_radius", "frequency", "distance", "humidity")

# spacing, min, max, steps per swept variable (visibility in km, radius in um,
# frequency in GHz, distance in m, humidity in percent)
_SWEEP_DEFAULTS = {
    "visibility": ("log", 0.001, 10.0, 60),
    "particle_radius": ("linear", 0.0, 538.0, 60),
    "frequency": ("linear", 1.0, 100.0, 60),
    "distance": ("linear", 10.0, 1000.0, 60),
    "humidity": ("linear", 0.0, 100.0, 51),
}

_DEFAULT_HUMIDITIES = (0.0, 60.0, 100.0)

_STORM_KEYS = (
    "reference_visibility_km",
    "reference_height_m",
    "height_m",
    "particle_radius_um",
    "humidity_pct",
    "gamma",
    "b",
    "c_const",
    "g_const",
    "size_unit_scale",
)
_DEFAULT_STORM = {
    "reference_visibility_km": 0.001,
    "reference_height_m": 1.0,
    "height_m": 1.0,
    "particle_radius_um": 100.0,
    "humidity_pct": 0.0,
    "gamma": 1.07,
    "b": 0.28,
    "c_const": 2.3e-5,
    "g_const": 1.07,
    "size_unit_scale": 1.0,
}


class ConfigError(Exception):
    """Bad configuration; maps to exit code 2."""


class CliIOError(Exception):
    """Unreadable input or unwritable output; maps to exit code 3."""


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    vmin: float
    vmax: float
    steps: int
    spacing: str


@dataclass(frozen=True)
class RunConfig:
    band: BandPreset
    scenario: Scenario
    distance_m: float
    frequency_ghz: float
    storm: StormProfile
    particle_radius_um: float  # as configured, before the m conversion
    humidity_list: tuple[float, ...]
    sweep: SweepSpec
    distance_mode: DistanceMode
    c2_literal: bool
    c3_literal: bool
    seed: int | None


# ---------------------------------------------------------------------------
# JSON config parsing (fail-closed)

def _check_keys(obj: dict, allowed, path: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key {path}{unknown[0]!r}")


def _as_object(doc: dict, key: str) -> dict:
    value = doc.get(key, {})
    if not isinstance(value, dict):
        raise ConfigError(f"{key!r} must be an object")
    return value


def _number(obj: dict, key: str, default, path: str = "") -> float:
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}{key!r} must be a number, got {value!r}")
    return float(value)


def _boolean(obj: dict, key: str, default: bool) -> bool:
    value = obj.get(key, default)
    if not isinstance(value, bool):
        raise ConfigError(f"{key!r} must be true or false, got {value!r}")
    return value


def _load_config_file(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return doc


_BAND_REQUIRED = (
    "frequency_ghz",
    "tx_gain_dbi",
    "rx_gain_dbi",
    "tx_power_dbm",
    "data_rate_bps",
    "required_ebn0_db",
)
_BAND_OPTIONAL = {
    "name": "custom",
    "circuit_loss_db": 0.0,
    "noise_figure_db": 0.0,
    "antenna_temperature_k": 290.0,
    "margin_threshold_db": 10.0,
}


def _resolve_band(spec) -> BandPreset:
    if isinstance(spec, str):
        if spec not in PRESETS:
            raise ConfigError(
                f"unknown band preset {spec!r}, expected one of {sorted(PRESETS)}"
            )
        return PRESETS[spec]
    if isinstance(spec, dict):
        _check_keys(spec, set(_BAND_REQUIRED) | set(_BAND_OPTIONAL), "band.")
        for key in _BAND_REQUIRED:
            if key not in spec:
                raise ConfigError(f"band.{key!r} is required for a custom band")
        name = spec.get("name", _BAND_OPTIONAL["name"])
        if not isinstance(name, str):
            raise ConfigError(f"band.'name' must be a string, got {name!r}")
        try:
            radio = RadioConfig(
                tx_gain_dbi=_number(spec, "tx_gain_dbi", None, "band."),
                rx_gain_dbi=_number(spec, "rx_gain_dbi", None, "band."),
                tx_power_dbm=_number(spec, "tx_power_dbm", None, "band."),
                data_rate_bps=_number(spec, "data_rate_bps", None, "band."),
                circuit_loss_db=_number(
                    spec, "circuit_loss_db", _BAND_OPTIONAL["circuit_loss_db"], "band."
                ),
                noise_figure_db=_number(
                    spec, "noise_figure_db", _BAND_OPTIONAL["noise_figure_db"], "band."
                ),
                antenna_temperature_k=_number(
                    spec,
                    "antenna_temperature_k",
                    _BAND_OPTIONAL["antenna_temperature_k"],
                    "band.",
                ),
                required_ebn0_db=_number(spec, "required_ebn0_db", None, "band."),
                margin_threshold_db=_number(
                    spec,
                    "margin_threshold_db",
                    _BAND_OPTIONAL["margin_threshold_db"],
                    "band.",
                ),
            )
        except ValueError as exc:
            raise ConfigError(f"band: {exc}") from None
        return BandPreset(name, _number(spec, "frequency_ghz", None, "band."), radio)
    raise ConfigError("'band' must be a preset name or an object")


def _parse_humidity_list(values, source: str) -> tuple[float, ...]:
    if not isinstance(values, (list, tuple)) or not values:
        raise ConfigError(f"{source} must be a non-empty list of percentages")
    out = []
    for value in values:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{source} entries must be numbers, got {value!r}")
        if not 0.0 <= value <= 100.0:
            raise ConfigError(f"{source} entries must be in [0, 100], got {value}")
        out.append(float(value))
    return tuple(out)


def _parse_sweep(doc: dict) -> SweepSpec:
    sweep = _as_object(doc, "sweep")
    _check_keys(sweep, ("variable", "min", "max", "steps", "spacing"), "sweep.")
    variable = sweep.get("variable", "visibility")
    if variable not in SWEEP_VARIABLES:
        raise ConfigError(
            f"sweep.'variable' must be one of {SWEEP_VARIABLES}, got {variable!r}"
        )
    def_spacing, def_min, def_max, def_steps = _SWEEP_DEFAULTS[variable]
    spacing = sweep.get("spacing", def_spacing)
    if spacing not in ("linear", "log"):
        raise ConfigError(f"sweep.'spacing' must be 'linear' or 'log', got {spacing!r}")
    vmin = _number(sweep, "min", def_min, "sweep.")
    vmax = _number(sweep, "max", def_max, "sweep.")
    steps = sweep.get("steps", def_steps)
    if isinstance(steps, bool) or not isinstance(steps, int):
        raise ConfigError(f"sweep.'steps' must be an integer, got {steps!r}")
    if steps < 2:
        raise ConfigError(f"sweep.'steps' must be >= 2, got {steps}")
    if not vmin < vmax:
        raise ConfigError(f"sweep min must be < max, got {vmin} >= {vmax}")
    if spacing == "log" and vmin <= 0:
        raise ConfigError("log spacing needs sweep min > 0")
    positive_only = {"visibility", "frequency", "distance"}
    if variable in positive_only and vmin <= 0:
        raise ConfigError(f"sweep min must be > 0 for {variable}")
    if variable == "particle_radius" and vmin < 0:
        raise ConfigError("sweep min must be >= 0 for particle_radius")
    if variable == "humidity" and not (0 <= vmin and vmax <= 100):
        raise ConfigError("humidity sweep must stay inside [0, 100]")
    return SweepSpec(variable, vmin, vmax, steps, spacing)


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, the JSON config file and CLI overrides into a RunConfig."""
    doc = _load_config_file(args.config) if args.config else {}
    _check_keys(
        doc,
        (
            "band",
            "scenario",
            "geometry",
            "storm",
            "humidity_list",
            "sweep",
            "distance_mode",
            "c2_literal",
            "c3_literal",
        ),
        "",
    )

    band_spec = doc.get("band", "dsrc-5.9")
    if args.preset:
        band_spec = args.preset
    band = _resolve_band(band_spec)

    scenario_obj = _as_object(doc, "scenario")
    _check_keys(
        scenario_obj, ("kind", "shadowing_db", "shadowing_sigma_db"), "scenario."
    )
    kind = args.scenario or scenario_obj.get("kind", "urban")
    shadowing = _number(scenario_obj, "shadowing_db", 0.0, "scenario.")
    sigma = _number(scenario_obj, "shadowing_sigma_db", 0.0, "scenario.")
    if sigma < 0:
        raise ConfigError(f"scenario.'shadowing_sigma_db' must be >= 0, got {sigma}")
    if sigma > 0 and args.seed is None:
        raise ConfigError(
            "shadowing_sigma_db > 0 needs an explicit --seed for a reproducible draw"
        )
    if sigma > 0:
        rng = np.random.default_rng(args.seed)
        shadowing += sample_shadowing_db(sigma, rng)

    geometry = _as_object(doc, "geometry")
    _check_keys(geometry, ("distance_m", "frequency_ghz"), "geometry.")
    distance_m = _number(geometry, "distance_m", 390.0, "geometry.")
    if args.distance_m is not None:
        distance_m = args.distance_m
    frequency_ghz = _number(
        geometry, "frequency_ghz", band.frequency_ghz, "geometry."
    )

    storm_obj = _as_object(doc, "storm")
    _check_keys(storm_obj, _STORM_KEYS, "storm.")
    storm_values = dict(_DEFAULT_STORM)
    for key in _STORM_KEYS:
        storm_values[key] = _number(storm_obj, key, storm_values[key], "storm.")
    if args.visibility_km is not None:
        storm_values["reference_visibility_km"] = args.visibility_km
    if args.particle_um is not None:
        storm_values["particle_radius_um"] = args.particle_um
    if args.size_unit_scale is not None:
        storm_values["size_unit_scale"] = args.size_unit_scale

    if args.humidity is not None:
        humidity_list = _parse_humidity_list(args.humidity, "--humidity")
    else:
        humidity_list = _parse_humidity_list(
            doc.get("humidity_list", list(_DEFAULT_HUMIDITIES)), "'humidity_list'"
        )
    if len(humidity_list) == 1:
        storm_values["humidity_pct"] = humidity_list[0]

    sweep = _parse_sweep(doc)

    mode_value = doc.get("distance_mode", DistanceMode.PER_KM.value)
    try:
        mode = DistanceMode(mode_value)
    except ValueError:
        raise ConfigError(
            f"'distance_mode' must be 'per-km' or 'as-printed', got {mode_value!r}"
        ) from None

    try:
        scenario = Scenario(kind, shadowing)
        storm = StormProfile(
            reference_visibility_km=storm_values["reference_visibility_km"],
            height_m=storm_values["height_m"],
            reference_height_m=storm_values["reference_height_m"],
            particle_radius_m=storm_values["particle_radius_um"] * 1e-6,
            humidity_pct=storm_values["humidity_pct"],
            gamma=storm_values["gamma"],
            b=storm_values["b"],
            c_const=storm_values["c_const"],
            g_const=storm_values["g_const"],
            size_unit_scale=storm_values["size_unit_scale"],
        )
        LinkGeometry(distance_m, frequency_ghz)  # validate early
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    return RunConfig(
        band=band,
        scenario=scenario,
        distance_m=distance_m,
        frequency_ghz=frequency_ghz,
        storm=storm,
        particle_radius_um=storm_values["particle_radius_um"],
        humidity_list=humidity_list,
        sweep=sweep,
        distance_mode=mode,
        c2_literal=_boolean(doc, "c2_literal", False),
        c3_literal=_boolean(doc, "c3_literal", False),
        seed=args.seed,
    )


# ---------------------------------------------------------------------------
# evaluation pipeline

def sweep_values(spec: SweepSpec) -> list[float]:
    n = spec.steps
    if spec.spacing == "log":
        lo, hi = math.log(spec.vmin), math.log(spec.vmax)
        values = [math.exp(lo + i * (hi - lo) / (n - 1)) for i in range(n)]
    else:
        values = [spec.vmin + i * (spec.vmax - spec.vmin) / (n - 1) for i in range(n)]
    values[0] = spec.vmin  # endpoints exact, interior computed
    values[-1] = spec.vmax
    return values


def _evaluate_row(
    cfg: RunConfig, humidity: float, storm: StormProfile, distance_m: float,
    frequency_ghz: float, particle_um: float | None = None,
) -> list:
    if particle_um is None:
        particle_um = storm.particle_radius_m * 1e6
    eps = humidity_adjusted_permittivity(humidity)
    attenuation = specific_attenuation(
        storm, frequency_ghz, eps,
        c2_literal=cfg.c2_literal, c3_literal=cfg.c3_literal,
    )
    geom = LinkGeometry(distance_m, frequency_ghz)
    report = evaluate_link(
        cfg.band.radio, cfg.scenario, geom, attenuation, mode=cfg.distance_mode
    )
    return [
        cfg.band.name,
        cfg.scenario.kind.value,
        humidity,
        storm.height_m,
        storm.reference_visibility_km,
        particle_um,
        frequency_ghz,
        attenuation,
        report.baseline_loss_db,
        report.modified_loss_db,
        report.margin_db,
        report.link_ok,
    ]


def _sweep_rows(cfg: RunConfig) -> list[list]:
    rows = []
    values = sweep_values(cfg.sweep)
    variable = cfg.sweep.variable
    if variable == "humidity":
        for value in values:
            storm = replace(cfg.storm, humidity_pct=value)
            rows.append(
                _evaluate_row(
                    cfg, value, storm, cfg.distance_m, cfg.frequency_ghz,
                    cfg.particle_radius_um,
                )
            )
        return rows
    for humidity in sorted(cfg.humidity_list):
        base_storm = replace(cfg.storm, humidity_pct=humidity)
        for value in values:
            storm = base_storm
            distance = cfg.distance_m
            frequency = cfg.frequency_ghz
            particle_um = cfg.particle_radius_um
            if variable == "visibility":
                storm = replace(base_storm, reference_visibility_km=value)
            elif variable == "particle_radius":
                storm = replace(base_storm, particle_radius_m=value * 1e-6)
                particle_um = value
            elif variable == "frequency":
                frequency = value
            elif variable == "distance":
                distance = value
            rows.append(
                _evaluate_row(cfg, humidity, storm, distance, frequency, particle_um)
            )
    return rows


def _threshold_rows(cfg: RunConfig) -> list[list]:
    rows = []
    for band in (PRESETS["dsrc-5.9"], PRESETS["mmwave-28"]):
        for kind in (ScenarioKind.URBAN, ScenarioKind.HIGHWAY):
            scenario = replace(cfg.scenario, kind=kind)
            geom = LinkGeometry(cfg.distance_m, band.frequency_ghz)
            for humidity in sorted(cfg.humidity_list):
                eps = humidity_adjusted_permittivity(humidity)
                profile = replace(cfg.storm, humidity_pct=humidity)
                visibility = threshold_visibility(
                    band.radio, scenario, geom, profile, eps,
                    mode=cfg.distance_mode,
                    c2_literal=cfg.c2_literal, c3_literal=cfg.c3_literal,
                )
                radius = threshold_particle_radius(
                    band.radio, scenario, geom, profile, eps,
                    mode=cfg.distance_mode,
                    c2_literal=cfg.c2_literal, c3_literal=cfg.c3_literal,
                )
                rows.append([
                    band.name,
                    kind.value,
                    humidity,
                    NO_FAILURE if visibility is None else visibility,
                    NO_FAILURE if radius is None else radius * 1e6,
                ])
    return rows


# ---------------------------------------------------------------------------
# output

def _format_field(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)  # shortest round-trip decimal
    return str(value)


def _render_csv(columns, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_field(field) for field in row])
    return buffer.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliIOError(f"cannot write {out_path}: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands

def _cmd_sweep(args: argparse.Namespace) -> None:
    cfg = build_config(args)
    _emit(_render_csv(SWEEP_COLUMNS, _sweep_rows(cfg)), args.out)


def _cmd_margin(args: argparse.Namespace) -> None:
    if args.humidity is not None and len(args.humidity) != 1:
        raise ConfigError("margin takes a single --humidity value")
    cfg = build_config(args)
    humidity = cfg.storm.humidity_pct
    row = _evaluate_row(
        cfg, humidity, cfg.storm, cfg.distance_m, cfg.frequency_ghz,
        cfg.particle_radius_um,
    )

    eps = humidity_adjusted_permittivity(humidity)
    geom = LinkGeometry(cfg.distance_m, cfg.frequency_ghz)
    radio = cfg.band.radio
    report_lines = [
        f"band                     {cfg.band.name}",
        f"frequency                {cfg.frequency_ghz:g} GHz",
        f"scenario                 {cfg.scenario.kind.value}",
        f"distance                 {cfg.distance_m:g} m",
        f"shadowing                {cfg.scenario.shadowing_db:.4f} dB",
        f"humidity                 {humidity:g} %",
        f"permittivity             {eps.eps1:.4f} - j {eps.eps2:.4f}",
        f"reference visibility     {cfg.storm.reference_visibility_km:g} km",
        f"visibility at {cfg.storm.height_m:g} m       "
        f"{visibility_at_height(cfg.storm):.6g} km",
        f"particle radius          {cfg.storm.particle_radius_m * 1e6:g} um",
        f"size unit scale          {cfg.storm.size_unit_scale:g}",
        f"specific attenuation     {row[7]:.6g} dB/km",
        f"baseline path loss       {row[8]:.4f} dB",
        f"dust excess              {row[9] - row[8]:.6g} dB",
        f"modified path loss       {row[9]:.4f} dB",
        f"EIRP                     {radio.eirp_dbm:.2f} dBm",
        f"system noise temperature {system_noise_temperature(radio):.2f} K",
        f"noise power              {noise_power_dbm(radio):.4f} dBm",
        f"allowed dust excess      "
        f"{max_allowed_excess_loss(radio, cfg.scenario, geom):.4f} dB",
        f"link margin              {row[10]:.4f} dB",
        f"margin threshold         {radio.margin_threshold_db:g} dB",
        f"link status              {'OK' if row[11] else 'FAIL'}",
    ]
    print("\n".join(report_lines), file=sys.stderr)
    _emit(_render_csv(SWEEP_COLUMNS, [row]), args.out)


def _cmd_thresholds(args: argparse.Namespace) -> None:
    cfg = build_config(args)
    _emit(_render_csv(THRESHOLD_COLUMNS, _threshold_rows(cfg)), args.out)


def _read_sweep_csv(path: str) -> list[dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliIOError(f"cannot read {path}: {exc}") from None
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != list(SWEEP_COLUMNS):
        raise CliIOError(f"{path}: not a sweep CSV (unexpected header {header})")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(SWEEP_COLUMNS):
            raise CliIOError(f"{path}:{lineno}: expected {len(SWEEP_COLUMNS)} fields")
        record = dict(zip(SWEEP_COLUMNS, row))
        try:
            for key in SWEEP_COLUMNS[2:-1]:
                record[key] = float(record[key])
        except ValueError:
            raise CliIOError(f"{path}:{lineno}: non-numeric field") from None
        rows.append(record)
    if not rows:
        raise CliIOError(f"{path}: no data rows")
    return rows


_AXIS_LABELS = {
    "visibility_km": "visibility [km]",
    "particle_radius_um": "particle radius [um]",
    "frequency_ghz": "frequency [GHz]",
    "height_m": "height [m]",
}


def _detect_axis(rows: list[dict]) -> str:
    first_humidity = rows[0]["humidity_pct"]
    group = [r for r in rows if r["humidity_pct"] == first_humidity]
    for column in _AXIS_LABELS:
        if len({r[column] for r in group}) > 1:
            return column
    raise CliIOError("cannot determine the sweep axis: no plottable column varies")


def _is_log_spaced(values: list[float]) -> bool:
    if len(values) < 3 or min(values) <= 0:
        return False
    diffs = [b - a for a, b in zip(values, values[1:])]
    ratios = [b / a for a, b in zip(values, values[1:])]
    def spread(seq):
        lo, hi = min(seq), max(seq)
        return (hi - lo) / max(abs(hi), abs(lo), 1e-300)
    return spread(ratios) < 1e-6 and spread(diffs) > 1e-6


def _cmd_plot(args: argparse.Namespace) -> None:
    rows = _read_sweep_csv(args.csv)
    axis = _detect_axis(rows)

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    humidities = sorted({r["humidity_pct"] for r in rows})
    fig, ax = plt.subplots(figsize=(7, 5))
    x_values = None
    for humidity in humidities:
        group = [r for r in rows if r["humidity_pct"] == humidity]
        xs = [r[axis] for r in group]
        ys = [r["attenuation_db_per_km"] for r in group]
        ax.plot(xs, ys, marker="", label=f"H = {humidity:g}%")
        x_values = xs
    if x_values and _is_log_spaced(x_values):
        ax.set_xscale("log")
    ax.set_xlabel(_AXIS_LABELS[axis])
    ax.set_ylabel("specific attenuation [dB/km]")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
    fig.tight_layout()
    try:
        fig.savefig(args.out)
    except OSError as exc:
        raise CliIOError(f"cannot write {args.out}: {exc}") from None
    finally:
        plt.close(fig)


# ---------------------------------------------------------------------------
# argument parsing

def _humidity_flag(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated percentages, got {text!r}"
        ) from None


def _seed_flag(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON configuration file")
    parser.add_argument(
        "--out", metavar="PATH", default=None, help="output file (default: stdout)"
    )
    parser.add_argument(
        "--preset", choices=sorted(PRESETS), help="band preset override"
    )
    parser.add_argument(
        "--humidity", type=_humidity_flag, metavar="PCT[,PCT...]",
        help="humidity override, comma separated percentages",
    )
    parser.add_argument("--distance-m", type=float, help="vehicle separation override")
    parser.add_argument(
        "--visibility-km", type=float, help="reference visibility override"
    )
    parser.add_argument(
        "--particle-um", type=float, help="equivalent particle radius override"
    )
    parser.add_argument(
        "--scenario", choices=[k.value for k in ScenarioKind],
        help="propagation scenario override",
    )
    parser.add_argument(
        "--seed", type=_seed_flag, help="seed for the shadowing draw"
    )
    parser.add_argument(
        "--size-unit-scale", type=float,
        help="multiplier on the radius-frequency product",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dustlink",
        description="Dust and sand storm impact on V2V radio links",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sweep = subparsers.add_parser(
        "sweep", help="evaluate the storm chain over a swept variable, emit CSV"
    )
    _add_common_flags(sweep)
    sweep.set_defaults(func=_cmd_sweep)

    margin = subparsers.add_parser(
        "margin", help="single-point link report (human readable + CSV row)"
    )
    _add_common_flags(margin)
    margin.set_defaults(func=_cmd_margin)

    thresholds = subparsers.add_parser(
        "thresholds",
        help="critical visibility and particle radius over both presets, "
        "both scenarios and each humidity",
    )
    _add_common_flags(thresholds)
    thresholds.set_defaults(func=_cmd_thresholds)

    plot = subparsers.add_parser("plot", help="render a sweep CSV as an image")
    plot.add_argument("csv", help="CSV file produced by the sweep command")
    plot.add_argument(
        "--out", metavar="PATH", required=True,
        help="image output path (format from extension, e.g. .svg or .pdf)",
    )
    plot.set_defaults(func=_cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CliIOError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def run() -> None:
    raise SystemExit(main())
