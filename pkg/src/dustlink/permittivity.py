"""Complex permittivity of dust and sand media.

The medium is described by a relative permittivity ``eps1 - j*eps2`` with the
loss factor stored as a positive number. A storm permittivity is obtained in
one of three ways:

* Looyenga effective-medium mixing of mineral components,
* arithmetic averaging of measured soil samples,
* an empirical cubic adjustment for relative humidity.

Values are immutable after construction and every function is a pure function
of its inputs, so they are safe to share between concurrent tasks.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

__all__ = [
    "ComplexPermittivity",
    "MineralComponent",
    "SoilSample",
    "DRY_BASELINE",
    "REFERENCE_SAMPLES",
    "SAMPLE_CSV_COLUMNS",
    "FRACTION_SUM_TOL",
    "looyenga_mix",
    "mean_permittivity",
    "mean_density",
    "humidity_adjusted_permittivity",
    "load_samples",
    "reference_samples_path",
]

#: Volume fractions of a mixture must sum to 1 within this tolerance.
FRACTION_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ComplexPermittivity:
    """Relative permittivity of a passive dielectric.

    Attributes:
        eps1: real dielectric constant, at least 1 (vacuum lower bound).
        eps2: dielectric loss factor, stored positive. The engineering sign
            convention ``eps1 - j*eps2`` is applied wherever a formula needs
            the signed form.
    """

    eps1: float
    eps2: float

    def __post_init__(self) -> None:
        if not self.eps1 >= 1.0:
            raise ValueError(f"eps1 must be >= 1, got {self.eps1}")
        if not self.eps2 >= 0.0:
            raise ValueError(f"eps2 must be >= 0, got {self.eps2}")


@dataclass(frozen=True)
class MineralComponent:
    """One constituent of a mixture: its permittivity and volume fraction."""

    permittivity: ComplexPermittivity
    volume_fraction: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.volume_fraction <= 1.0:
            raise ValueError(
                f"volume_fraction must be in [0, 1], got {self.volume_fraction}"
            )


@dataclass(frozen=True)
class SoilSample:
    """A measured soil sample: label, bulk density and complex permittivity."""

    id: str
    density_g_cm3: float
    permittivity: ComplexPermittivity

    def __post_init__(self) -> None:
        if not self.density_g_cm3 > 0.0:
            raise ValueError(f"density must be positive, got {self.density_g_cm3}")


def looyenga_mix(components: list[MineralComponent]) -> ComplexPermittivity:
    """Effective permittivity of a mixture by the Looyenga cube-root rule.

    The mixture permittivity satisfies ``eps_m**(1/3) = sum(v_i * eps_i**(1/3))``
    where ``v_i`` are volume fractions. Each component is lifted to the complex
    plane with a positive imaginary part, so the principal cube root keeps every
    term in the upper half plane and the cubed sum lands back there; the result
    therefore has a non-negative loss factor.

    Args:
        components: non-empty list whose volume fractions sum to 1 within
            ``FRACTION_SUM_TOL``.

    Raises:
        ValueError: empty list, or fraction sum off by more than the tolerance.
    """
    if not components:
        raise ValueError("components must be non-empty")
    total = sum(c.volume_fraction for c in components)
    if abs(total - 1.0) > FRACTION_SUM_TOL:
        raise ValueError(
            f"volume fractions must sum to 1 within {FRACTION_SUM_TOL}, got {total!r}"
        )
    third = 1.0 / 3.0
    mixed = 0j
    for comp in components:
        eps = complex(comp.permittivity.eps1, comp.permittivity.eps2)
        mixed += comp.volume_fraction * eps**third
    cubed = mixed**3
    return ComplexPermittivity(cubed.real, cubed.imag)


def mean_permittivity(samples: list[SoilSample]) -> ComplexPermittivity:
    """Component-wise arithmetic mean of the sample permittivities."""
    if not samples:
        raise ValueError("samples must be non-empty")
    n = len(samples)
    return ComplexPermittivity(
        sum(s.permittivity.eps1 for s in samples) / n,
        sum(s.permittivity.eps2 for s in samples) / n,
    )


def mean_density(samples: list[SoilSample]) -> float:
    """Arithmetic mean sample density in g/cm^3."""
    if not samples:
        raise ValueError("samples must be non-empty")
    return sum(s.density_g_cm3 for s in samples) / len(samples)


#: Dry-air (0% relative humidity) baseline permittivity of the default region;
#: equals the arithmetic mean of :data:`REFERENCE_SAMPLES` to measurement
#: precision and anchors the humidity cubics below.
DRY_BASELINE = ComplexPermittivity(6.3485, 0.0929)


def humidity_adjusted_permittivity(
    humidity_pct: float, base: ComplexPermittivity = DRY_BASELINE
) -> ComplexPermittivity:
    """Medium permittivity at the given relative humidity.

    Empirical cubics in the humidity percentage H::

        eps1 = base.eps1 + 0.04*H - 7.78e-4*H**2 + 5.56e-6*H**3
        eps2 = base.eps2 + 0.02*H - 3.71e-4*H**2 + 2.76e-6*H**3

    Both components are strictly increasing on [0, 100] and H = 0 returns the
    base unchanged. The base defaults to the regional mean but can be swapped
    for another region's dry-air measurement.

    Raises:
        ValueError: humidity outside [0, 100].
    """
    h = humidity_pct
    if not 0.0 <= h <= 100.0:
        raise ValueError(f"humidity must be in [0, 100] percent, got {h}")
    eps1 = base.eps1 + 0.04 * h - 7.78e-4 * h**2 + 5.56e-6 * h**3
    eps2 = base.eps2 + 0.02 * h - 3.71e-4 * h**2 + 2.76e-6 * h**3
    return ComplexPermittivity(eps1, eps2)


#: Nine desert soil samples (bulk density and complex permittivity) shipped as
#: the default regional dataset. Also available as a CSV fixture, see
#: :func:`reference_samples_path`.
REFERENCE_SAMPLES: tuple[SoilSample, ...] = (
    SoilSample("1", 2.5426, ComplexPermittivity(5.0384, 0.0509)),
    SoilSample("2", 2.56857, ComplexPermittivity(5.4851, 0.0562)),
    SoilSample("3", 2.6138, ComplexPermittivity(5.4801, 0.0694)),
    SoilSample("4", 2.62714, ComplexPermittivity(7.5929, 0.1140)),
    SoilSample("5", 2.4202, ComplexPermittivity(6.7899, 0.1296)),
    SoilSample("6", 2.9232, ComplexPermittivity(5.4003, 0.0787)),
    SoilSample("7", 2.4732, ComplexPermittivity(7.4707, 0.1344)),
    SoilSample("8", 2.5425, ComplexPermittivity(5.5713, 0.0704)),
    SoilSample("9", 2.4764, ComplexPermittivity(8.3078, 0.1329)),
)

#: Required CSV header for sample tables.
SAMPLE_CSV_COLUMNS = ("id", "density_g_cm3", "eps1", "eps2")


def load_samples(path: str | Path) -> tuple[SoilSample, ...]:
    """Load a sample table from CSV.

    Expects the exact header ``id,density_g_cm3,eps1,eps2``, one row per
    sample, UTF-8, ``.`` decimal separator. Blank lines are ignored.

    Raises:
        ValueError: wrong header, malformed row, or no data rows.
        OSError: unreadable file.
    """
    path = Path(path)
    samples = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != list(SAMPLE_CSV_COLUMNS):
            raise ValueError(
                f"{path.name}: expected header "
                f"{','.join(SAMPLE_CSV_COLUMNS)!r}, got {header}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(SAMPLE_CSV_COLUMNS):
                raise ValueError(
                    f"{path.name}:{lineno}: expected "
                    f"{len(SAMPLE_CSV_COLUMNS)} columns, got {len(row)}"
                )
            try:
                density, eps1, eps2 = (float(field) for field in row[1:])
            except ValueError:
                raise ValueError(
                    f"{path.name}:{lineno}: non-numeric field in {row!r}"
                ) from None
            samples.append(SoilSample(row[0], density, ComplexPermittivity(eps1, eps2)))
    if not samples:
        raise ValueError(f"{path.name}: no sample rows")
    return tuple(samples)


def reference_samples_path() -> Path:
    """Path of the packaged CSV copy of :data:`REFERENCE_SAMPLES`."""
    return Path(str(resources.files("dustlink").joinpath("data/soil_samples.csv")))
