"""Dust and sand storm impact on vehicle-to-vehicle radio links.

Chain: storm permittivity (mixing rules, humidity) -> specific attenuation
(Mie size expansion) -> urban/highway path loss -> link margin -> failure
thresholds in particle radius and visibility.
"""

from .attenuation import (
    MieCoefficients,
    StormProfile,
    mie_coefficients,
    specific_attenuation,
    visibility_at_height,
)
from .linkbudget import (
    BOLTZMANN_J_PER_K,
    PRESETS,
    BandPreset,
    LinkReport,
    NumericAssumptionError,
    RadioConfig,
    evaluate_link,
    link_margin,
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
    baseline_path_loss,
    dust_excess_db,
    modified_path_loss,
    sample_shadowing_db,
)
from .permittivity import (
    DRY_BASELINE,
    REFERENCE_SAMPLES,
    ComplexPermittivity,
    MineralComponent,
    SoilSample,
    humidity_adjusted_permittivity,
    load_samples,
    looyenga_mix,
    mean_density,
    mean_permittivity,
    reference_samples_path,
)

__version__ = "0.1.0"

__all__ = [
    "BOLTZMANN_J_PER_K",
    "BandPreset",
    "ComplexPermittivity",
    "DRY_BASELINE",
    "DistanceMode",
    "LinkGeometry",
    "LinkReport",
    "MieCoefficients",
    "MineralComponent",
    "NumericAssumptionError",
    "PRESETS",
    "REFERENCE_SAMPLES",
    "RadioConfig",
    "Scenario",
    "ScenarioKind",
    "SoilSample",
    "StormProfile",
    "baseline_path_loss",
    "dust_excess_db",
    "evaluate_link",
    "humidity_adjusted_permittivity",
    "link_margin",
    "load_samples",
    "looyenga_mix",
    "max_allowed_excess_loss",
    "mean_density",
    "mean_permittivity",
    "mie_coefficients",
    "modified_path_loss",
    "noise_power_dbm",
    "reference_samples_path",
    "sample_shadowing_db",
    "specific_attenuation",
    "system_noise_temperature",
    "threshold_particle_radius",
    "threshold_visibility",
    "visibility_at_height",
]
