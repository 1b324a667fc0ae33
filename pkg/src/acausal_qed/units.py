"""Physical constants, unit systems and impedance conversions.

Everything inside the library is computed in Gaussian CGS units.  SI and
natural units only appear at the I/O boundary.  Impedances in Gaussian units
carry dimensions of s/cm; the customary display unit is ps/cm.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidConstants, InvalidImpedance

C_CGS = 2.99792458e10  # cm/s, exact
C_SI = 2.99792458e8  # m/s, exact
HBAR_CGS = 1.054571817e-27  # erg s
HBAR_SI = 1.054571817e-34  # J s
E_SI = 1.602176634e-19  # C, exact
# 1 C = (c_cgs / 10) statC
E_CGS = E_SI * C_CGS / 10.0  # esu
MU0_SI = 4.0e-7 * math.pi  # H/m, Gaussian-compatible definition
PS_PER_S = 1.0e12

# Gaussian impedance (s/cm) of one Ohm: R_vac(Gaussian) / R_vac(SI).
SECONDS_PER_CM_PER_OHM = (4.0 * math.pi / C_CGS) / (MU0_SI * C_SI)


class UnitSystem(enum.Enum):
    GAUSSIAN = "gaussian"
    SI = "si"
    NATURAL = "natural"

    @classmethod
    def parse(cls, value: "UnitSystem | str") -> "UnitSystem":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown unit system {value!r}; expected one of "
                + ", ".join(m.value for m in cls)
            ) from None


class Impedance(NamedTuple):
    value: float
    unit: str


@dataclass(frozen=True)
class Constants:
    """Constants expressed in one unit system.

    ``r_vac`` is the vacuum impedance in that system's native units
    (s/cm for Gaussian, Ohm for SI, 1/c = 1 for natural units).
    """

    system: UnitSystem
    c: float
    hbar: float
    e_charge: float
    r_vac: float

    @property
    def alpha(self) -> float:
        return fine_structure(self)

    def as_dict(self) -> dict:
        return {
            "system": self.system.value,
            "c": self.c,
            "hbar": self.hbar,
            "e_charge": self.e_charge,
            "r_vac": self.r_vac,
            "alpha": self.alpha,
        }


GAUSSIAN = Constants(
    system=UnitSystem.GAUSSIAN,
    c=C_CGS,
    hbar=HBAR_CGS,
    e_charge=E_CGS,
    r_vac=4.0 * math.pi / C_CGS,
)

SI = Constants(
    system=UnitSystem.SI,
    c=C_SI,
    hbar=HBAR_SI,
    e_charge=E_SI,
    r_vac=MU0_SI * C_SI,
)


def _natural() -> Constants:
    # Heaviside-Lorentz style: c = hbar = 1 and R_vac = 1/c = 1.
    alpha = GAUSSIAN.e_charge**2 / (GAUSSIAN.hbar * GAUSSIAN.c)
    return Constants(
        system=UnitSystem.NATURAL,
        c=1.0,
        hbar=1.0,
        e_charge=math.sqrt(4.0 * math.pi * alpha),
        r_vac=1.0,
    )


NATURAL = _natural()

_BY_SYSTEM = {
    UnitSystem.GAUSSIAN: GAUSSIAN,
    UnitSystem.SI: SI,
    UnitSystem.NATURAL: NATURAL,
}


def constants(system: UnitSystem | str = UnitSystem.GAUSSIAN) -> Constants:
    return _BY_SYSTEM[UnitSystem.parse(system)]


def fine_structure(const: Constants) -> float:
    """Coupling strength ``alpha = e**2 R_vac / (4 pi hbar)``.

    In Gaussian units this reduces to ``e**2 / (hbar c)``.
    """
    if not (const.c > 0 and const.hbar > 0 and const.e_charge > 0 and const.r_vac > 0):
        raise InvalidConstants(
            f"constants must be positive, got c={const.c}, hbar={const.hbar}, "
            f"e={const.e_charge}, r_vac={const.r_vac}"
        )
    return const.e_charge**2 * const.r_vac / (4.0 * math.pi * const.hbar)


def vacuum_impedance(system: UnitSystem | str = UnitSystem.GAUSSIAN) -> Impedance:
    """Vacuum impedance in the display unit of ``system``.

    Gaussian values are reported in ps/cm, SI values in Ohm; in natural units
    the impedance is ``1/c = 1``.
    """
    system = UnitSystem.parse(system)
    if system is UnitSystem.GAUSSIAN:
        return Impedance(GAUSSIAN.r_vac * PS_PER_S, "ps/cm")
    if system is UnitSystem.SI:
        return Impedance(SI.r_vac, "Ohm")
    return Impedance(NATURAL.r_vac, "1")


def _check_impedance(r: float) -> float:
    r = float(r)
    if not r >= 0.0:  # also rejects NaN
        raise InvalidImpedance(f"impedance must be non-negative, got {r}")
    return r


def ohms_to_gaussian(r_ohms: float) -> float:
    """Convert an impedance in Ohm to Gaussian ps/cm (50 Ohm -> ~55.6 ps/cm)."""
    return _check_impedance(r_ohms) * SECONDS_PER_CM_PER_OHM * PS_PER_S


def gaussian_to_ohms(r_ps_per_cm: float) -> float:
    return _check_impedance(r_ps_per_cm) / (SECONDS_PER_CM_PER_OHM * PS_PER_S)


def ohms_to_s_per_cm(r_ohms: float) -> float:
    """Convert Ohm to the internal Gaussian impedance unit (s/cm)."""
    return _check_impedance(r_ohms) * SECONDS_PER_CM_PER_OHM


def s_per_cm_to_ohms(r_s_per_cm: float) -> float:
    return _check_impedance(r_s_per_cm) / SECONDS_PER_CM_PER_OHM
