"""Specific attenuation of radio waves propagating through dust and sand.

A storm is summarized by its visibility profile, an equivalent particle
radius, and the medium permittivity. The attenuation model is a forward
Mie-scattering size expansion: three permittivity-dependent coefficients
weight successive powers of the radius-frequency product, and the whole
series scales inversely with visibility (denser dust, shorter visibility,
more loss).

Everything here is pure and deterministic: identical inputs give
bit-identical outputs, so sweep grids can be evaluated concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .permittivity import ComplexPermittivity

__all__ = [
    "StormProfile",
    "MieCoefficients",
    "visibility_at_height",
    "mie_coefficients",
    "specific_attenuation",
]


@dataclass(frozen=True)
class StormProfile:
    """Dust or sand storm description.

    Attributes:
        reference_visibility_km: visibility V0 at the reference height, km.
        height_m: height above ground at which the link is evaluated, m.
        reference_height_m: height h0 at which V0 was observed, m.
        particle_radius_m: equivalent particle radius, m. Zero means clear air.
        humidity_pct: relative humidity in percent; carried with the profile so
            pipelines can derive the medium permittivity from it.
        gamma: exponent of the visibility power law; depends on storm origin,
            soil type and climate.
        b: height exponent of the visibility power law; depends on climate and
            the particle size distribution.
        c_const: companion empirical constant quoted alongside gamma and b;
            carried for completeness, not consumed by any expression here.
        g_const: same as c_const.
        size_unit_scale: multiplier applied to the radius-frequency product.
            1.0 keeps the literal meters-times-GHz reading; other values
            recalibrate the size term without changing the model shape, and
            every monotonicity property is invariant to it.
    """

    reference_visibility_km: float
    height_m: float = 1.0
    reference_height_m: float = 1.0
    particle_radius_m: float = 0.0
    humidity_pct: float = 0.0
    gamma: float = 1.07
    b: float = 0.28
    c_const: float = 2.3e-5
    g_const: float = 1.07
    size_unit_scale: float = 1.0

    def __post_init__(self) -> None:
        if not self.reference_visibility_km > 0.0:
            raise ValueError(
                f"reference visibility must be positive, got {self.reference_visibility_km}"
            )
        if not self.height_m > 0.0:
            raise ValueError(f"height must be positive, got {self.height_m}")
        if not self.reference_height_m > 0.0:
            raise ValueError(
                f"reference height must be positive, got {self.reference_height_m}"
            )
        if not self.particle_radius_m >= 0.0:
            raise ValueError(
                f"particle radius must be >= 0, got {self.particle_radius_m}"
            )
        if not 0.0 <= self.humidity_pct <= 100.0:
            raise ValueError(
                f"humidity must be in [0, 100] percent, got {self.humidity_pct}"
            )
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not self.size_unit_scale > 0.0:
            raise ValueError(
                f"size_unit_scale must be positive, got {self.size_unit_scale}"
            )


def visibility_at_height(profile: StormProfile) -> float:
    """Visibility in km at the profile height.

    Power law ``V = V0 * (h / h0)**(b / gamma)``: visibility improves with
    height as the dust concentration thins. At ``h == h0`` this is exactly V0.
    """
    ratio = profile.height_m / profile.reference_height_m
    return profile.reference_visibility_km * ratio ** (profile.b / profile.gamma)


@dataclass(frozen=True)
class MieCoefficients:
    """Coefficients of the size expansion. c1 is non-negative by construction
    (its numerator is a positive multiple of the loss factor and its
    denominator a sum of squares)."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        for name, value in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.c1 < 0.0:
            raise ValueError(f"c1 must be >= 0, got {self.c1}")


def mie_coefficients(
    eps: ComplexPermittivity,
    *,
    c2_literal: bool = False,
    c3_literal: bool = False,
) -> MieCoefficients:
    """Size-expansion coefficients for a medium permittivity.

    With ``q = (eps1 + 2)**2 + eps2**2``::

        c1 = 6*eps2 / q
        c2 = eps2 * ( (7*eps1**2 + 7*eps2**2 + 4*eps1 - 20) / (5*q**2)
                      + 1/15
                      + 5 / (3*((2*eps1 + 3)**2 + 4*eps2**2)) )
        c3 = (4/3) * ( (eps1-1)**2*(eps1+2)
                       + (2*(eps1-1)*(eps1+2) - 9)*eps2**2
                       + eps2**4 ) / q**2

    Two alternative readings exist for c2 and c3 and can be selected with the
    literal flags: ``c2_literal`` replaces the leading ``7*eps1**2`` with
    ``67*eps1**2``, and ``c3_literal`` drops the ``eps2**2`` factor on the
    middle c3 term. The defaults keep each numerator a polynomial in
    ``eps2**2``, consistent with the neighbouring terms.
    """
    e1 = eps.eps1
    e2 = eps.eps2
    q = (e1 + 2.0) ** 2 + e2**2
    c1 = 6.0 * e2 / q
    lead = (67.0 if c2_literal else 7.0) * e1**2
    c2 = e2 * (
        (lead + 7.0 * e2**2 + 4.0 * e1 - 20.0) / (5.0 * q**2)
        + 1.0 / 15.0
        + 5.0 / (3.0 * ((2.0 * e1 + 3.0) ** 2 + 4.0 * e2**2))
    )
    mid = 2.0 * (e1 - 1.0) * (e1 + 2.0) - 9.0
    if not c3_literal:
        mid *= e2**2
    c3 = (4.0 / 3.0) * (((e1 - 1.0) ** 2) * (e1 + 2.0) + mid + e2**4) / q**2
    return MieCoefficients(c1, c2, c3)


def specific_attenuation(
    profile: StormProfile,
    frequency_ghz: float,
    eps: ComplexPermittivity,
    *,
    c2_literal: bool = False,
    c3_literal: bool = False,
) -> float:
    """Specific attenuation in dB/km.

    With ``s = size_unit_scale * particle_radius * frequency`` and ``v`` the
    height-adjusted visibility, returns ``(s/v) * (c1 + c2*s**2 + c3*s**3)``.
    Clear air (zero radius) gives exactly 0, and the result is exactly
    proportional to 1/visibility.
    """
    if not frequency_ghz > 0.0:
        raise ValueError(f"frequency must be positive, got {frequency_ghz}")
    coeffs = mie_coefficients(eps, c2_literal=c2_literal, c3_literal=c3_literal)
    v_km = visibility_at_height(profile)
    s = profile.size_unit_scale * profile.particle_radius_m * frequency_ghz
    return (s / v_km) * (coeffs.c1 + coeffs.c2 * s * s + coeffs.c3 * s * s * s)
