"""Acceptance suite: one test per shipping criterion.

Each test prints an ``ACCEPTANCE n: PASS/FAIL`` line before asserting; run
with ``pytest -s tests/test_acceptance.py`` to see the full report.

Criterion 5 is expected to fail on exactly one clause (urban vs highway
threshold ordering); its docstring explains why the clause cannot hold and
why it is asserted as stated anyway.
"""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from dustlink.attenuation import (
    StormProfile,
    mie_coefficients,
    specific_attenuation,
)
from dustlink.cli import main
from dustlink.linkbudget import (
    PRESETS,
    RadioConfig,
    link_margin,
    max_allowed_excess_loss,
    noise_power_dbm,
    system_noise_temperature,
    threshold_particle_radius,
    threshold_visibility,
)
from dustlink.pathloss import LinkGeometry, Scenario, baseline_path_loss
from dustlink.permittivity import (
    DRY_BASELINE,
    REFERENCE_SAMPLES,
    humidity_adjusted_permittivity,
    mean_density,
    mean_permittivity,
)

GOLDEN = Path(__file__).parent / "golden"
HUMIDITY_GOLDEN = json.loads((GOLDEN / "humidity.json").read_text())
LINK_GOLDEN = json.loads((GOLDEN / "link_chain.json").read_text())

OPERATING_DISTANCE_M = 390.0


def report(number: int, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" - {detail}"
    print(line)


def test_criterion_1_dataset_reproduction():
    """Embedded sample table reproduces the published regional averages."""
    mean_eps = mean_permittivity(REFERENCE_SAMPLES)
    density = mean_density(REFERENCE_SAMPLES)
    ok = (
        abs(mean_eps.eps1 - 6.3485) <= 1e-3
        and abs(mean_eps.eps2 - 0.0929) <= 1e-3
        and abs(density - 2.5764) <= 1e-4
    )
    report(1, ok, f"mean eps ({mean_eps.eps1:.4f}, {mean_eps.eps2:.4f}), "
                  f"mean density {density:.4f} g/cm^3")
    assert abs(mean_eps.eps1 - 6.3485) <= 1e-3
    assert abs(mean_eps.eps2 - 0.0929) <= 1e-3
    assert abs(density - 2.5764) <= 1e-4


def test_criterion_2_humidity_polynomial_anchors():
    """Humidity cubics anchor exactly at 0% and track the committed
    polynomial oracle at 60% and 100% within 1e-9."""
    dry = humidity_adjusted_permittivity(0.0)
    exact_anchor = dry.eps1 == DRY_BASELINE.eps1 and dry.eps2 == DRY_BASELINE.eps2
    deviations = []
    for humidity in ("60", "100"):
        eps = humidity_adjusted_permittivity(float(humidity))
        golden = HUMIDITY_GOLDEN[humidity]
        deviations.append(abs(eps.eps1 - golden["eps1"]))
        deviations.append(abs(eps.eps2 - golden["eps2"]))
    ok = exact_anchor and max(deviations) <= 1e-9
    report(2, ok, f"max oracle deviation {max(deviations):.2e}")
    assert exact_anchor
    assert max(deviations) <= 1e-9


def test_criterion_3_link_budget_chain():
    """Preset chain (5 dB circuit loss, 6 dB noise figure, 290 K antenna,
    390 m) matches the committed linear-domain hand oracle within 0.01 dB."""
    worst = 0.0
    t_sys = system_noise_temperature(PRESETS["dsrc-5.9"].radio)
    t_ok = abs(t_sys - LINK_GOLDEN["system_noise_temperature_k"]) <= 1e-6
    for band_name in ("dsrc-5.9", "mmwave-28"):
        preset = PRESETS[band_name]
        golden = LINK_GOLDEN[band_name]
        worst = max(worst, abs(noise_power_dbm(preset.radio) - golden["noise_power_dbm"]))
        geom = LinkGeometry(OPERATING_DISTANCE_M, preset.frequency_ghz)
        for kind in ("urban", "highway"):
            margin = link_margin(
                preset.radio, baseline_path_loss(Scenario(kind), geom)
            )
            worst = max(worst, abs(margin - golden[kind]["clear_air_margin_db"]))
    dsrc_urban = link_margin(
        PRESETS["dsrc-5.9"].radio,
        baseline_path_loss(
            Scenario("urban"), LinkGeometry(OPERATING_DISTANCE_M, 5.9)
        ),
    )
    ok = t_ok and worst <= 0.01 and abs(dsrc_urban - 20.59) <= 0.01
    report(3, ok, f"worst dB deviation {worst:.2e}, "
                  f"dsrc/urban margin {dsrc_urban:.4f} dB")
    assert t_ok
    assert worst <= 0.01
    assert abs(dsrc_urban - 20.59) <= 0.01


def test_criterion_4_sweep_shape_properties():
    """Attenuation falls with visibility and rises with frequency, particle
    radius and humidity; the humidity curves never cross."""
    eps_by_humidity = {
        h: humidity_adjusted_permittivity(h) for h in (0.0, 60.0, 100.0)
    }

    def attenuation(v_km, radius_m, f_ghz, humidity):
        profile = StormProfile(
            reference_visibility_km=v_km,
            particle_radius_m=radius_m,
            humidity_pct=humidity,
            size_unit_scale=1000.0,
        )
        return specific_attenuation(profile, f_ghz, eps_by_humidity[humidity])

    ok = True
    # strictly decreasing in visibility
    visibilities = np.geomspace(1e-3, 10.0, 120)
    for humidity in (0.0, 60.0, 100.0):
        values = [attenuation(v, 100e-6, 28.0, humidity) for v in visibilities]
        ok &= all(b < a for a, b in zip(values, values[1:]))
    # strictly increasing in frequency
    frequencies = np.linspace(1.0, 100.0, 150)
    for humidity in (0.0, 60.0, 100.0):
        values = [attenuation(0.01, 100e-6, f, humidity) for f in frequencies]
        ok &= all(b > a for a, b in zip(values, values[1:]))
    # strictly increasing in particle radius
    radii = np.linspace(600e-6 / 150, 600e-6, 150)
    for frequency in (5.9, 28.0):
        values = [attenuation(0.01, r, frequency, 60.0) for r in radii]
        ok &= all(b > a for a, b in zip(values, values[1:]))
    # humidity dominance, pointwise over a joint grid
    for v_km in np.geomspace(1e-3, 1.0, 6):
        for radius in np.linspace(50e-6, 538e-6, 8):
            for frequency in (1.0, 5.9, 28.0, 60.0):
                dry = attenuation(v_km, radius, frequency, 0.0)
                damp = attenuation(v_km, radius, frequency, 60.0)
                wet = attenuation(v_km, radius, frequency, 100.0)
                ok &= wet > damp > dry
    report(4, ok)
    assert ok


def test_criterion_5_threshold_table_orderings():
    """Threshold-table ordering contract.

    On a calibrated threshold grid (size product scale 1000, radius searches
    at a 1 m visibility slice, visibility searches at a 40 um radius slice;
    the orderings are invariant to the calibration), assert:

      a) 28 GHz critical radii are strictly smaller than 5.9 GHz ones,
      b) critical radii shrink as humidity rises 0 -> 60 -> 100,
      c) urban critical radii exceed highway ones,
      d) at 0% humidity the 5.9 GHz band reports the no-visibility-failure
         sentinel in both scenarios.

    KNOWN FAILURE, kept deliberately: clause (c) cannot hold at the 390 m
    operating point. The urban fit loses 5.43 dB more than the highway fit
    there (96.07 vs 90.64 dB at 5.9 GHz), so the urban margin and therefore
    the allowed dust excess are smaller, which forces the urban critical
    radius below the highway one; no size calibration or slice choice can
    flip a monotone threshold against its margin headroom. The clause is
    asserted as stated rather than weakened, so this test is red by design.
    """
    scale = 1000.0
    visibility_slice_km = 0.001
    radius_slice_m = 40e-6
    humidities = (0.0, 60.0, 100.0)

    radius = {}
    visibility = {}
    for band_name, preset in PRESETS.items():
        geom = LinkGeometry(OPERATING_DISTANCE_M, preset.frequency_ghz)
        for kind in ("urban", "highway"):
            scenario = Scenario(kind)
            for humidity in humidities:
                eps = humidity_adjusted_permittivity(humidity)
                profile = StormProfile(
                    reference_visibility_km=visibility_slice_km,
                    particle_radius_m=radius_slice_m,
                    humidity_pct=humidity,
                    size_unit_scale=scale,
                )
                key = (band_name, kind, humidity)
                radius[key] = threshold_particle_radius(
                    preset.radio, scenario, geom, profile, eps
                )
                visibility[key] = threshold_visibility(
                    preset.radio, scenario, geom, profile, eps
                )

    failures = []

    # a) the higher band fails at strictly smaller grains
    for kind in ("urban", "highway"):
        for humidity in humidities:
            high = radius[("mmwave-28", kind, humidity)]
            low = radius[("dsrc-5.9", kind, humidity)]
            if high is None or low is None or not high < low:
                failures.append(f"(a) 28 GHz !< 5.9 GHz at {kind}/H={humidity:g}")

    # b) humidity tightens the radius threshold
    for band_name in PRESETS:
        for kind in ("urban", "highway"):
            values = [radius[(band_name, kind, h)] for h in humidities]
            if any(v is None for v in values) or not values[0] > values[1] > values[2]:
                failures.append(f"(b) radii not shrinking with humidity at "
                                f"{band_name}/{kind}")

    # c) stated urban/highway ordering (see docstring: cannot hold)
    for band_name in PRESETS:
        for humidity in humidities:
            urban = radius[(band_name, "urban", humidity)]
            highway = radius[(band_name, "highway", humidity)]
            if urban is None or highway is None or not urban > highway:
                failures.append(
                    f"(c) urban !> highway at {band_name}/H={humidity:g} "
                    f"(urban {urban}, highway {highway})"
                )

    # d) dry 5.9 GHz link shrugs off any visibility
    for kind in ("urban", "highway"):
        if visibility[("dsrc-5.9", kind, 0.0)] is not None:
            failures.append(f"(d) missing visibility sentinel at {kind}")

    report(5, not failures, "; ".join(failures) if failures else "")
    assert not failures, "; ".join(failures)


def test_criterion_6_solver_matches_grid_scan():
    """Bisection thresholds agree with exhaustive grid scans within one grid
    step on randomized configurations."""
    rng = np.random.default_rng(20240613)
    radius_step_m = 1e-6
    radius_grid = np.linspace(0.0, 5e-3, 5001)
    vis_points = 2001
    vis_log_grid = np.linspace(math.log(1e-4), math.log(100.0), vis_points)
    vis_grid = np.exp(vis_log_grid)
    vis_log_step = (math.log(100.0) - math.log(1e-4)) / (vis_points - 1)

    checked = 0
    worst_radius_gap = 0.0
    worst_vis_gap = 0.0
    for _ in range(24):
        config = RadioConfig(
            tx_gain_dbi=float(rng.uniform(0, 25)),
            rx_gain_dbi=float(rng.uniform(0, 25)),
            tx_power_dbm=float(rng.uniform(-25, 35)),
            data_rate_bps=float(10 ** rng.uniform(6, 9.5)),
            circuit_loss_db=float(rng.uniform(0, 8)),
            noise_figure_db=float(rng.uniform(0, 10)),
            antenna_temperature_k=float(rng.uniform(100, 500)),
            required_ebn0_db=float(rng.uniform(5, 25)),
        )
        scenario = Scenario(str(rng.choice(["urban", "highway"])))
        geom = LinkGeometry(
            float(rng.uniform(50, 2000)), float(rng.uniform(2, 60))
        )
        humidity = float(rng.uniform(0, 100))
        eps = humidity_adjusted_permittivity(humidity)
        profile = StormProfile(
            reference_visibility_km=float(10 ** rng.uniform(-3.5, -2.0)),
            particle_radius_m=float(rng.uniform(10e-6, 200e-6)),
            humidity_pct=humidity,
            size_unit_scale=float(10 ** rng.uniform(2.5, 3.5)),
        )
        allowed = max_allowed_excess_loss(config, scenario, geom)
        coeffs = mie_coefficients(eps)
        d_km = geom.distance_m / 1000.0

        # independent radius scan, straight from the closed form
        s = profile.size_unit_scale * radius_grid * geom.frequency_ghz
        series = coeffs.c1 + coeffs.c2 * s**2 + coeffs.c3 * s**3
        excess = (s / profile.reference_visibility_km) * series * d_km
        hits = np.nonzero(excess >= allowed)[0]
        scan_radius = None if hits.size == 0 else float(radius_grid[hits[0]])
        solved_radius = threshold_particle_radius(
            config, scenario, geom, profile, eps
        )
        if scan_radius is None or solved_radius is None:
            assert scan_radius is None and solved_radius is None
        else:
            gap = abs(solved_radius - scan_radius)
            worst_radius_gap = max(worst_radius_gap, gap)
            assert gap <= radius_step_m

        # independent visibility scan on a log grid
        s_fixed = (
            profile.size_unit_scale * profile.particle_radius_m * geom.frequency_ghz
        )
        series_fixed = (
            coeffs.c1 + coeffs.c2 * s_fixed**2 + coeffs.c3 * s_fixed**3
        )
        excess = (s_fixed / vis_grid) * series_fixed * d_km
        failing = np.nonzero(excess > allowed)[0]
        scan_vis = None if failing.size == 0 else float(vis_grid[failing[-1]])
        solved_vis = threshold_visibility(config, scenario, geom, profile, eps)
        if scan_vis is None or solved_vis is None:
            assert scan_vis is None and solved_vis is None
        else:
            gap = abs(math.log(solved_vis) - math.log(scan_vis))
            worst_vis_gap = max(worst_vis_gap, gap)
            assert gap <= vis_log_step
        checked += 1

    ok = checked >= 20
    report(
        6, ok,
        f"{checked} configurations, worst radius gap {worst_radius_gap:.2e} m, "
        f"worst log-visibility gap {worst_vis_gap:.2e}",
    )
    assert checked >= 20


def test_criterion_7_csv_determinism(tmp_path, capsys):
    """Identical config and seed produce byte-identical sweep and threshold
    CSV files."""
    config = tmp_path / "run.json"
    config.write_text(json.dumps({
        "scenario": {"kind": "highway", "shadowing_sigma_db": 1.5},
        "storm": {"size_unit_scale": 1000.0, "particle_radius_um": 40.0},
        "sweep": {"variable": "visibility", "steps": 40},
    }))
    outputs = []
    for command in ("sweep", "thresholds"):
        pair = []
        for run_index in (0, 1):
            target = tmp_path / f"{command}_{run_index}.csv"
            code = main([
                command, "--config", str(config), "--seed", "99",
                "--out", str(target),
            ])
            assert code == 0
            pair.append(target.read_bytes())
        outputs.append(pair)
    capsys.readouterr()
    ok = all(first == second for first, second in outputs)
    report(7, ok)
    assert ok
