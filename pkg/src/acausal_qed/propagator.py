"""Vacuum photon propagator pieces and the regulated transmission-line correlator.

Lengths are in cm.  The on-cone delta functions are represented by unit-area
Gaussians of caller-chosen width so they can be evaluated pointwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPoints, DegenerateSeparation, LightConeSingular, RegulatorViolation
from .units import GAUSSIAN, Constants

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class SpacetimePoint:
    """Separation between two events: spatial distance ``r_distance`` and ``ct``."""

    r_distance: float
    ct: float

    def __post_init__(self):
        if not self.r_distance >= 0.0:
            raise DegenerateSeparation(f"spatial distance must be >= 0, got {self.r_distance}")

    @property
    def interval(self) -> float:
        """``R**2 - (cT)**2``: positive for space-like separations."""
        return self.r_distance**2 - self.ct**2


@dataclass(frozen=True)
class RegulatedLine:
    """Infinite-line model with infrared regulator length ``lambda_reg`` (cm).

    ``r_line`` is the line impedance in Gaussian s/cm.
    """

    lambda_reg: float
    r_line: float

    def __post_init__(self):
        if not self.lambda_reg > 0.0:
            raise ValueError(f"regulator length must be positive, got {self.lambda_reg}")
        if not self.r_line > 0.0:
            raise ValueError(f"line impedance must be positive, got {self.r_line}")


def default_cone_tolerance(p: SpacetimePoint) -> float:
    return 1e-12 * max(p.r_distance**2, p.ct**2, 1.0)


def offcone_im(p: SpacetimePoint, tol_cone: float | None = None) -> float:
    """Imaginary part of the Feynman propagator off the light cone.

    Returns ``1 / (pi (R**2 - c**2 T**2))`` in 1/cm**2, positive for space-like
    and negative for time-like separations.
    """
    if tol_cone is None:
        tol_cone = default_cone_tolerance(p)
    s = p.interval
    if abs(s) <= tol_cone:
        raise LightConeSingular(
            f"R={p.r_distance}, cT={p.ct} lies on the light cone (|R^2-(cT)^2|={abs(s):.3e})"
        )
    return 1.0 / (math.pi * s)


def gaussian_delta(x, sigma: float):
    """Unit-area Gaussian of standard deviation ``sigma``."""
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * (x / sigma) ** 2) / (sigma * _SQRT_2PI)


def oncone_re_mollified(p: SpacetimePoint, sigma: float) -> float:
    """Half the sum of retarded and advanced kernels, deltas smeared by ``sigma``."""
    if not p.r_distance > 0.0:
        raise DegenerateSeparation("the on-cone kernel needs R > 0")
    if not sigma > 0.0:
        raise ValueError(f"mollifier width must be positive, got {sigma}")
    r = p.r_distance
    ret = gaussian_delta(p.ct - r, sigma)
    adv = gaussian_delta(p.ct + r, sigma)
    return float(0.5 * (ret + adv) / r)


def retarded_mollified(p: SpacetimePoint, sigma: float) -> float:
    if not p.r_distance > 0.0:
        raise DegenerateSeparation("the on-cone kernel needs R > 0")
    return float(gaussian_delta(p.ct - p.r_distance, sigma) / p.r_distance)


def advanced_mollified(p: SpacetimePoint, sigma: float) -> float:
    if not p.r_distance > 0.0:
        raise DegenerateSeparation("the on-cone kernel needs R > 0")
    return float(gaussian_delta(p.ct + p.r_distance, sigma) / p.r_distance)


def tline_wightman(z: float, line: RegulatedLine, const: Constants = GAUSSIAN) -> float:
    """Equal-time line correlator ``W(z) = (c R / 2 pi) ln|Lambda / z|``.

    Only differences ``W(z1) - W(z2)`` are regulator independent.
    """
    az = abs(float(z))
    if az == 0.0:
        raise CoincidentPoints("W(z) diverges at z = 0")
    if az >= line.lambda_reg:
        raise RegulatorViolation(f"|z|={az} must be below the regulator length {line.lambda_reg}")
    return const.c * line.r_line / (2.0 * math.pi) * math.log(line.lambda_reg / az)


def tline_wightman_array(z, line: RegulatedLine, const: Constants = GAUSSIAN) -> np.ndarray:
    """Vectorised :func:`tline_wightman` with the same domain checks."""
    az = np.abs(np.asarray(z, dtype=float))
    if np.any(az == 0.0):
        raise CoincidentPoints("W(z) diverges at z = 0")
    if np.any(az >= line.lambda_reg):
        raise RegulatorViolation(
            f"max |z|={az.max()} must be below the regulator length {line.lambda_reg}"
        )
    return const.c * line.r_line / (2.0 * math.pi) * np.log(line.lambda_reg / az)
