"""Vehicle-to-vehicle path loss for urban and highway settings.

Log-distance fits with distance in meters and frequency in GHz:

    urban:    38.77 + 16.7*log10(d) + 18.2*log10(f) + shadowing
    highway:  23.4  + 20.0*log10(d) + 20.0*log10(f) + shadowing

Neither fit dominates the other everywhere; which one is larger flips with
distance and frequency. A storm adds a dust excess on top of the baseline,
by default the specific attenuation scaled by the path length in km.

Functions are pure and stateless. The optional stochastic shadowing draws
from a caller-provided seeded generator, so there is no hidden shared state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ScenarioKind",
    "Scenario",
    "LinkGeometry",
    "DistanceMode",
    "baseline_path_loss",
    "dust_excess_db",
    "modified_path_loss",
    "sample_shadowing_db",
]


class ScenarioKind(enum.Enum):
    URBAN = "urban"
    HIGHWAY = "highway"


@dataclass(frozen=True)
class Scenario:
    """Propagation environment plus a deterministic shadowing term in dB.

    The shadowing defaults to 0. Sampled zero-mean shadowing (see
    :func:`sample_shadowing_db`) may be folded into ``shadowing_db``, so
    negative values are accepted.
    """

    kind: ScenarioKind
    shadowing_db: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ScenarioKind(self.kind))
        if not math.isfinite(self.shadowing_db):
            raise ValueError(f"shadowing must be finite, got {self.shadowing_db}")


@dataclass(frozen=True)
class LinkGeometry:
    """Separation and carrier of one vehicle-to-vehicle link."""

    distance_m: float
    frequency_ghz: float

    def __post_init__(self) -> None:
        if not self.distance_m > 0.0:
            raise ValueError(f"distance must be positive, got {self.distance_m}")
        if not self.frequency_ghz > 0.0:
            raise ValueError(f"frequency must be positive, got {self.frequency_ghz}")


class DistanceMode(enum.Enum):
    """How the specific attenuation (dB/km) enters the path loss (dB).

    PER_KM scales it by the path length in km, which keeps the units
    consistent. AS_PRINTED adds the dB/km figure verbatim, reproducing the
    historical formulation for comparison runs.
    """

    PER_KM = "per-km"
    AS_PRINTED = "as-printed"


_COEFFS = {
    ScenarioKind.URBAN: (38.77, 16.7, 18.2),
    ScenarioKind.HIGHWAY: (23.4, 20.0, 20.0),
}


def baseline_path_loss(scenario: Scenario, geom: LinkGeometry) -> float:
    """Clear-air path loss in dB, shadowing included."""
    const, k_dist, k_freq = _COEFFS[scenario.kind]
    return (
        const
        + k_dist * math.log10(geom.distance_m)
        + k_freq * math.log10(geom.frequency_ghz)
        + scenario.shadowing_db
    )


def dust_excess_db(
    attenuation_db_per_km: float,
    distance_m: float,
    mode: DistanceMode = DistanceMode.PER_KM,
) -> float:
    """Excess loss in dB contributed by the storm over the given path."""
    if attenuation_db_per_km < 0.0:
        raise ValueError(
            f"attenuation must be >= 0, got {attenuation_db_per_km}"
        )
    if mode is DistanceMode.PER_KM:
        return attenuation_db_per_km * (distance_m / 1000.0)
    return attenuation_db_per_km


def modified_path_loss(
    scenario: Scenario,
    geom: LinkGeometry,
    attenuation_db_per_km: float,
    mode: DistanceMode = DistanceMode.PER_KM,
) -> float:
    """Path loss in dB including the dust excess. Zero attenuation reduces
    exactly to the baseline."""
    return baseline_path_loss(scenario, geom) + dust_excess_db(
        attenuation_db_per_km, geom.distance_m, mode
    )


def sample_shadowing_db(sigma_db: float, rng: np.random.Generator) -> float:
    """One zero-mean shadowing draw in dB (log-normal in linear power).

    Deterministic for a given generator state; pass a freshly seeded
    generator for reproducible runs.
    """
    if sigma_db < 0.0:
        raise ValueError(f"sigma must be >= 0, got {sigma_db}")
    if sigma_db == 0.0:
        return 0.0
    return float(rng.normal(0.0, sigma_db))
