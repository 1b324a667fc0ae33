import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from acausal_qed import propagator as prop
from acausal_qed.errors import CoincidentPoints, DegenerateSeparation, LightConeSingular, RegulatorViolation
from acausal_qed.propagator import RegulatedLine, SpacetimePoint
from acausal_qed.units import GAUSSIAN


def test_offcone_examples():
    assert prop.offcone_im(SpacetimePoint(1.0, 0.0)) == pytest.approx(1 / math.pi, rel=1e-15)
    assert prop.offcone_im(SpacetimePoint(0.0, 1.0)) == pytest.approx(-1 / math.pi, rel=1e-15)
    with pytest.raises(LightConeSingular):
        prop.offcone_im(SpacetimePoint(1.0, 1.0))


def test_offcone_tolerance_is_configurable():
    p = SpacetimePoint(1.0, 1.0 - 1e-9)
    with pytest.raises(LightConeSingular):
        prop.offcone_im(p, tol_cone=1e-6)
    assert prop.offcone_im(p, tol_cone=1e-12) > 0


@given(st.floats(0.0, 1e3), st.floats(-1e3, 1e3))
def test_offcone_even_in_time(r, ct):
    p = SpacetimePoint(r, ct)
    if abs(p.interval) <= prop.default_cone_tolerance(p) * 10:
        return
    assert prop.offcone_im(p) == prop.offcone_im(SpacetimePoint(r, -ct))


def test_negative_distance_rejected():
    with pytest.raises(DegenerateSeparation):
        SpacetimePoint(-1.0, 0.0)


def test_oncone_on_the_cone():
    sigma = 0.25
    g = lambda x: math.exp(-0.5 * (x / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
    expected = 1 / (6 * sigma * math.sqrt(2 * math.pi)) + 0.5 * g(6.0) / 3
    assert prop.oncone_re_mollified(SpacetimePoint(3.0, 3.0), sigma) == pytest.approx(expected, rel=1e-14)


def test_oncone_far_from_cone():
    assert prop.oncone_re_mollified(SpacetimePoint(1.0, 100.0), 0.1) < 1e-300


def test_oncone_rejects_zero_distance():
    with pytest.raises(DegenerateSeparation):
        prop.oncone_re_mollified(SpacetimePoint(0.0, 1.0), 0.1)


@given(st.floats(0.01, 50.0), st.floats(-60.0, 60.0), st.floats(0.01, 2.0))
def test_oncone_time_symmetric(r, ct, sigma):
    a = prop.oncone_re_mollified(SpacetimePoint(r, ct), sigma)
    b = prop.oncone_re_mollified(SpacetimePoint(r, -ct), sigma)
    assert a == pytest.approx(b, rel=1e-14, abs=0)


@pytest.mark.parametrize("r", [0.5, 2.0, 7.0])
def test_oncone_integrates_to_inverse_distance(r):
    sigma = 0.05
    ct = np.linspace(-r - 20 * sigma, r + 20 * sigma, 200001)
    dense = 0.5 * (prop.gaussian_delta(ct - r, sigma) + prop.gaussian_delta(ct + r, sigma)) / r
    assert np.trapezoid(dense, ct) == pytest.approx(1 / r, abs=1e-6)


def test_retarded_plus_advanced():
    p = SpacetimePoint(2.0, 1.9)
    s = 0.3
    assert prop.oncone_re_mollified(p, s) == pytest.approx(
        0.5 * (prop.retarded_mollified(p, s) + prop.advanced_mollified(p, s)), rel=1e-15
    )


LINE = RegulatedLine(lambda_reg=1e5, r_line=5.5e-11)


def test_wightman_at_lambda_over_e():
    z = LINE.lambda_reg / math.e
    assert prop.tline_wightman(z, LINE) == pytest.approx(GAUSSIAN.c * LINE.r_line / (2 * math.pi), rel=1e-14)


@pytest.mark.parametrize("z1, z2", [(1.0, 2.0), (0.3, 17.0), (-4.0, 9.0)])
def test_wightman_differences_are_regulator_free(z1, z2):
    big = RegulatedLine(1000 * LINE.lambda_reg, LINE.r_line)
    d_small = prop.tline_wightman(z1, LINE) - prop.tline_wightman(z2, LINE)
    d_big = prop.tline_wightman(z1, big) - prop.tline_wightman(z2, big)
    expected = GAUSSIAN.c * LINE.r_line / (2 * math.pi) * math.log(abs(z2 / z1))
    assert d_small == pytest.approx(expected, rel=1e-12)
    assert d_big == pytest.approx(d_small, rel=1e-12)


def test_wightman_errors():
    with pytest.raises(CoincidentPoints):
        prop.tline_wightman(0.0, LINE)
    with pytest.raises(RegulatorViolation):
        prop.tline_wightman(2 * LINE.lambda_reg, LINE)
    with pytest.raises(CoincidentPoints):
        prop.tline_wightman_array([1.0, 0.0], LINE)


def test_wightman_array_matches_scalar():
    z = np.array([-3.0, 0.5, 10.0])
    arr = prop.tline_wightman_array(z, LINE)
    assert arr == pytest.approx([prop.tline_wightman(v, LINE) for v in z], rel=1e-15)
