"""Link margin of a V2V radio link under dust, and storm failure thresholds.

The margin is the dB headroom of the received energy-per-bit over the noise
spectral density, relative to the ratio required by the target error rate:

    margin = P_tx + G_tx + G_rx - N - L_circuit - L_path - (Eb/N0)_required

where ``N = 10*log10(k * T_sys * R / 1 mW)`` is the noise power over the data
rate R. All arithmetic is done in the dB domain; this is algebraically
identical to the linear power ratio and avoids overflow at high rates. A link
is declared reliable while the margin stays at or above a threshold
(10 dB by default).

The threshold solvers invert the chain: they find the particle radius above
which, or the visibility below which, the margin crosses the threshold.
Both use bisection against the monotone dust-excess curve and are
deterministic; independent searches may run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .attenuation import StormProfile, specific_attenuation
from .pathloss import (
    DistanceMode,
    LinkGeometry,
    Scenario,
    baseline_path_loss,
    dust_excess_db,
)
from .permittivity import ComplexPermittivity

__all__ = [
    "BOLTZMANN_J_PER_K",
    "RadioConfig",
    "BandPreset",
    "PRESETS",
    "LinkReport",
    "NumericAssumptionError",
    "system_noise_temperature",
    "noise_power_dbm",
    "link_margin",
    "max_allowed_excess_loss",
    "evaluate_link",
    "threshold_particle_radius",
    "threshold_visibility",
]

#: Exact SI value.
BOLTZMANN_J_PER_K = 1.380649e-23


@dataclass(frozen=True)
class RadioConfig:
    """Radio parameters of one link budget.

    Gains in dBi, transmit power in dBm, data rate in bit/s, losses and the
    required Eb/N0 in dB, antenna temperature in K.
    """

    tx_gain_dbi: float
    rx_gain_dbi: float
    tx_power_dbm: float
    data_rate_bps: float
    circuit_loss_db: float
    noise_figure_db: float
    antenna_temperature_k: float
    required_ebn0_db: float
    margin_threshold_db: float = 10.0

    def __post_init__(self) -> None:
        if not self.data_rate_bps > 0.0:
            raise ValueError(f"data rate must be positive, got {self.data_rate_bps}")
        if not self.antenna_temperature_k > 0.0:
            raise ValueError(
                f"antenna temperature must be positive, got {self.antenna_temperature_k}"
            )
        if self.circuit_loss_db < 0.0:
            raise ValueError(
                f"circuit loss must be >= 0, got {self.circuit_loss_db}"
            )
        if self.noise_figure_db < 0.0:
            raise ValueError(
                f"noise figure must be >= 0, got {self.noise_figure_db}"
            )

    @property
    def eirp_dbm(self) -> float:
        """Effective isotropic radiated power; derived display value, never a
        second input (it already contains the transmit gain)."""
        return self.tx_power_dbm + self.tx_gain_dbi


@dataclass(frozen=True)
class BandPreset:
    """A named radio configuration bound to its carrier frequency."""

    name: str
    frequency_ghz: float
    radio: RadioConfig


#: Shipped band presets: the 5.9 GHz DSRC vehicular band and the 28 GHz
#: mm-wave band, both assuming 5 dB circuit loss, a 6 dB receiver noise
#: figure, a 290 K antenna and Eb/N0 = 18.8 dB for a 1e-6 bit error rate.
PRESETS: dict[str, BandPreset] = {
    "dsrc-5.9": BandPreset(
        "dsrc-5.9",
        5.9,
        RadioConfig(
            tx_gain_dbi=9.9,
            rx_gain_dbi=9.9,
            tx_power_dbm=27.0,
            data_rate_bps=27e6,
            circuit_loss_db=5.0,
            noise_figure_db=6.0,
            antenna_temperature_k=290.0,
            required_ebn0_db=18.8,
        ),
    ),
    "mmwave-28": BandPreset(
        "mmwave-28",
        28.0,
        RadioConfig(
            tx_gain_dbi=23.4,
            rx_gain_dbi=23.4,
            tx_power_dbm=27.0,
            data_rate_bps=1e9,
            circuit_loss_db=5.0,
            noise_figure_db=6.0,
            antenna_temperature_k=290.0,
            required_ebn0_db=18.8,
        ),
    ),
}


def system_noise_temperature(config: RadioConfig) -> float:
    """Effective system noise temperature in K: the antenna temperature plus
    the receiver contribution ``(F_linear - 1) * 290``."""
    f_linear = 10.0 ** (config.noise_figure_db / 10.0)
    return config.antenna_temperature_k + (f_linear - 1.0) * 290.0


def noise_power_dbm(config: RadioConfig) -> float:
    """Noise power ``k * T_sys * R`` in dBm, with the data rate standing in
    for the noise bandwidth."""
    watts = BOLTZMANN_J_PER_K * system_noise_temperature(config) * config.data_rate_bps
    return 10.0 * math.log10(watts * 1e3)


def link_margin(config: RadioConfig, modified_loss_db: float) -> float:
    """Link margin in dB for a given total path loss.

    Affine with slope +1 in transmit power and gains, slope -1 in every loss
    term including the path loss itself.
    """
    return (
        config.tx_power_dbm
        + config.tx_gain_dbi
        + config.rx_gain_dbi
        - noise_power_dbm(config)
        - config.circuit_loss_db
        - modified_loss_db
        - config.required_ebn0_db
    )


def max_allowed_excess_loss(
    config: RadioConfig, scenario: Scenario, geom: LinkGeometry
) -> float:
    """Largest dust excess in dB that keeps the margin at or above the
    configured threshold. Negative means the clear-air link already fails;
    that is a meaningful result, not an error."""
    clear_margin = link_margin(config, baseline_path_loss(scenario, geom))
    return clear_margin - config.margin_threshold_db


@dataclass(frozen=True)
class LinkReport:
    """Outcome of one link evaluation under a storm."""

    baseline_loss_db: float
    dust_attenuation_db_per_km: float
    dust_excess_db: float
    modified_loss_db: float
    margin_db: float
    link_ok: bool

    def __post_init__(self) -> None:
        gap = abs(self.modified_loss_db - (self.baseline_loss_db + self.dust_excess_db))
        if not gap <= 1e-9:
            raise ValueError(
                "modified loss must equal baseline plus dust excess, "
                f"off by {gap}"
            )


def evaluate_link(
    config: RadioConfig,
    scenario: Scenario,
    geom: LinkGeometry,
    attenuation_db_per_km: float,
    mode: DistanceMode = DistanceMode.PER_KM,
) -> LinkReport:
    """Full chain from specific attenuation to a pass/fail link report."""
    baseline = baseline_path_loss(scenario, geom)
    excess = dust_excess_db(attenuation_db_per_km, geom.distance_m, mode)
    modified = baseline + excess
    margin = link_margin(config, modified)
    return LinkReport(
        baseline_loss_db=baseline,
        dust_attenuation_db_per_km=attenuation_db_per_km,
        dust_excess_db=excess,
        modified_loss_db=modified,
        margin_db=margin,
        link_ok=margin >= config.margin_threshold_db,
    )


class NumericAssumptionError(RuntimeError):
    """A threshold search found its monotonicity assumption violated."""


#: Default search bracket for the particle radius, m. Covers the sieving
#: range of natural dust and sand with generous headroom.
RADIUS_BRACKET_MAX_M = 5e-3
#: Absolute radius tolerance of the bisection, m.
RADIUS_TOL_M = 1e-8
#: Default visibility search bracket, km.
VISIBILITY_BRACKET_KM = (1e-4, 100.0)
#: Relative visibility tolerance of the bisection.
VISIBILITY_REL_TOL = 1e-6


def _excess_scale(geom: LinkGeometry, mode: DistanceMode) -> float:
    # dust excess = specific attenuation times this factor; computed directly
    # so the solvers can run their own sign checks on pathological
    # coefficient readings before any non-negativity validation fires
    return geom.distance_m / 1000.0 if mode is DistanceMode.PER_KM else 1.0


def threshold_particle_radius(
    config: RadioConfig,
    scenario: Scenario,
    geom: LinkGeometry,
    profile: StormProfile,
    eps: ComplexPermittivity,
    *,
    mode: DistanceMode = DistanceMode.PER_KM,
    c2_literal: bool = False,
    c3_literal: bool = False,
    bracket_max_m: float = RADIUS_BRACKET_MAX_M,
    tol_m: float = RADIUS_TOL_M,
) -> float | None:
    """Critical equivalent particle radius in m.

    The profile's own radius is ignored; everything else (visibility slice,
    heights, humidity, size scale) is taken from it. Returns:

    * the radius at which the dust excess exhausts the allowed margin
      headroom, found by bisection to ``tol_m``;
    * 0.0 when the clear-air link already fails (any dust breaks it);
    * None when even the bracket-top radius keeps the link alive.

    Raises:
        NumericAssumptionError: the dust excess is not increasing across the
            bracket (sign check at the endpoints).
    """
    allowed = max_allowed_excess_loss(config, scenario, geom)
    if allowed <= 0.0:
        return 0.0
    scale = _excess_scale(geom, mode)

    def excess(radius_m: float) -> float:
        att = specific_attenuation(
            replace(profile, particle_radius_m=radius_m),
            geom.frequency_ghz, eps,
            c2_literal=c2_literal, c3_literal=c3_literal,
        )
        return att * scale

    lo, hi = 0.0, bracket_max_m
    if excess(hi) < excess(lo):
        raise NumericAssumptionError(
            "dust excess is not increasing across the radius bracket"
        )
    if excess(hi) < allowed:
        return None
    while hi - lo > tol_m:
        mid = 0.5 * (lo + hi)
        if excess(mid) >= allowed:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def threshold_visibility(
    config: RadioConfig,
    scenario: Scenario,
    geom: LinkGeometry,
    profile: StormProfile,
    eps: ComplexPermittivity,
    *,
    mode: DistanceMode = DistanceMode.PER_KM,
    c2_literal: bool = False,
    c3_literal: bool = False,
    bracket_km: tuple[float, float] = VISIBILITY_BRACKET_KM,
    rel_tol: float = VISIBILITY_REL_TOL,
) -> float | None:
    """Critical reference visibility in km below which the link fails.

    The profile's own visibility is ignored; the fixed particle radius and
    the rest of the storm come from it. Returns:

    * the visibility at which the margin crosses the threshold, found by
      bisection in log space to relative tolerance ``rel_tol``;
    * the bracket ceiling when the link fails at every bracketed visibility
      (including a clear-air failure, where the link never recovers);
    * None when the link survives even at the bracket floor.

    Raises:
        NumericAssumptionError: the dust excess is not decreasing in
            visibility across the bracket.
    """
    floor_km, ceil_km = bracket_km
    allowed = max_allowed_excess_loss(config, scenario, geom)
    if allowed <= 0.0:
        return ceil_km
    scale = _excess_scale(geom, mode)

    def excess(v_km: float) -> float:
        att = specific_attenuation(
            replace(profile, reference_visibility_km=v_km),
            geom.frequency_ghz, eps,
            c2_literal=c2_literal, c3_literal=c3_literal,
        )
        return att * scale

    excess_floor = excess(floor_km)
    excess_ceil = excess(ceil_km)
    if excess_floor < excess_ceil:
        raise NumericAssumptionError(
            "dust excess is not decreasing across the visibility bracket"
        )
    if excess_floor <= allowed:
        return None
    if excess_ceil > allowed:
        return ceil_km
    lo, hi = floor_km, ceil_km  # excess(lo) > allowed >= excess(hi)
    while hi / lo - 1.0 > rel_tol:
        mid = math.sqrt(lo * hi)
        if excess(mid) > allowed:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)
