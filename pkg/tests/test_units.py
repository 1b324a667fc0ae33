import math

import pytest

from acausal_qed import units
from acausal_qed.errors import InvalidConstants, InvalidImpedance
from acausal_qed.units import Constants, UnitSystem


@pytest.mark.parametrize(
    "system, value, unit",
    [
        ("gaussian", 419.169004390336362, "ps/cm"),
        ("si", 376.730313461770655, "Ohm"),
        ("natural", 1.0, "1"),
    ],
)
def test_vacuum_impedance_values(system, value, unit):
    imp = units.vacuum_impedance(system)
    assert imp.unit == unit
    assert imp.value == pytest.approx(value, rel=1e-13)


def test_vacuum_impedance_defining_expressions():
    assert units.GAUSSIAN.r_vac == 4 * math.pi / units.GAUSSIAN.c
    eps0 = 1.0 / (units.MU0_SI * units.C_SI**2)
    assert units.SI.r_vac == pytest.approx(1.0 / (eps0 * units.C_SI), rel=1e-15)
    assert units.NATURAL.r_vac == 1.0 / units.NATURAL.c == 1.0


def test_ohms_to_gaussian():
    assert units.ohms_to_gaussian(376.730313461770655) == pytest.approx(419.169004390336362, rel=1e-14)
    assert round(units.ohms_to_gaussian(50.0), 1) == 55.6
    assert units.ohms_to_gaussian(0.0) == 0.0
    with pytest.raises(InvalidImpedance):
        units.ohms_to_gaussian(-1.0)


@pytest.mark.parametrize("r", [0.0, 1e-3, 1.0, 50.0, 376.73, 1e6])
def test_impedance_round_trip(r):
    back = units.gaussian_to_ohms(units.ohms_to_gaussian(r))
    assert back == pytest.approx(r, rel=1e-14, abs=0)
    assert units.s_per_cm_to_ohms(units.ohms_to_s_per_cm(r)) == pytest.approx(r, rel=1e-14, abs=0)


def test_fine_structure_from_cgs_constants():
    # independent evaluation of e^2 / (hbar c) from the SI definitions
    e_esu = 1.602176634e-19 * 2.99792458e9
    expected = e_esu**2 / (1.054571817e-27 * 2.99792458e10)
    alpha = units.fine_structure(units.GAUSSIAN)
    assert alpha == pytest.approx(expected, rel=1e-14)
    assert str(alpha).startswith("0.007297352")
    assert 1.0 / alpha == pytest.approx(137.035999, rel=1e-8)


def test_alpha_agrees_across_systems():
    vals = [units.constants(s).alpha for s in UnitSystem]
    for v in vals:
        assert v == pytest.approx(vals[0], rel=1e-12)


def test_alpha_quadratic_in_charge():
    g = units.GAUSSIAN
    doubled = Constants(g.system, g.c, g.hbar, 2 * g.e_charge, g.r_vac)
    assert units.fine_structure(doubled) == pytest.approx(4 * units.fine_structure(g), rel=1e-15)


def test_natural_round_trip():
    alpha = 1 / 137.0
    c = Constants(UnitSystem.NATURAL, 1.0, 1.0, math.sqrt(4 * math.pi * alpha / 1.0), 1.0)
    assert units.fine_structure(c) == pytest.approx(alpha, rel=1e-14)


def test_invalid_constants():
    g = units.GAUSSIAN
    with pytest.raises(InvalidConstants):
        units.fine_structure(Constants(g.system, g.c, 0.0, g.e_charge, g.r_vac))


def test_unit_system_parse():
    assert UnitSystem.parse("SI") is UnitSystem.SI
    with pytest.raises(ValueError):
        UnitSystem.parse("planck")
