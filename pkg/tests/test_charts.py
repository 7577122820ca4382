import math

import numpy as np
import pytest
from hypothesis import given

from _holokerr.charts import (
    ChartError,
    ChartKind,
    DisplaceSqueezeChart,
    PolarSingularityError,
    SU2Chart,
    TwoModeChart,
    UnsupportedComponentError,
    cartesian_from_polar,
    make_chart,
)

from .generators.control_points import displace_squeeze_values


@pytest.mark.parametrize(
    "name, kind, cutoff",
    [
        ("SingleModeDS", ChartKind.SINGLE_MODE_DS, 32),
        ("SingleModeDSPolar", ChartKind.SINGLE_MODE_DS_POLAR, 32),
        ("TwoModeNM", ChartKind.TWO_MODE_NM, 16),
        ("SU2Interferometer", ChartKind.SU2_INTERFEROMETER, 4),
    ],
)
def test_make_chart_by_name(name, kind, cutoff):
    chart = make_chart(name)
    assert chart.kind == kind
    assert chart.kind.display_name == name
    assert chart.cutoff == cutoff


def test_unknown_chart_name():
    with pytest.raises(ValueError, match="Unknown chart"):
        ChartKind.from_name("Heisenberg")


def test_with_cutoff_keeps_polar():
    chart = DisplaceSqueezeChart(8, polar=True).with_cutoff(16)
    assert chart.polar
    assert chart.space.total_dim == 16


def test_point_defaults_to_zero():
    point = TwoModeChart(4).point(r3=0.5)
    assert point.values == (0.0, 0.0, 0.5, 0.0)
    assert point["r3"] == 0.5


def test_point_replace():
    point = SU2Chart().point(alpha=1.0).replace(gamma=2.0)
    assert point.as_dict() == {"alpha": 1.0, "beta": 0.0, "gamma": 2.0}


def test_unknown_coordinate():
    with pytest.raises(ChartError, match="no coordinate 'r2'"):
        DisplaceSqueezeChart(8).point(r2=0.1)


def test_negative_radius():
    with pytest.raises(ValueError, match="non-negative"):
        DisplaceSqueezeChart(8).point(r1=-0.1)


def test_two_mode_angles_have_no_closed_form():
    chart = TwoModeChart(4)
    with pytest.raises(UnsupportedComponentError, match="theta2"):
        chart.published_connection(chart.origin().values, "theta2")


def test_polar_singularity():
    chart = DisplaceSqueezeChart(8, polar=True)
    with pytest.raises(PolarSingularityError):
        chart.check_values((0.0, 0.3, 0.1, 0.2))


def test_squeeze_radius_component_vanishes():
    chart = DisplaceSqueezeChart(8)
    matrix = chart.published_connection((0.1, 0.2, 0.3, 0.4), "r1")
    assert np.all(matrix == 0)


def test_unitary_at_origin_is_identity():
    chart = TwoModeChart(4)
    unitary = chart.unitary_from_values(chart.origin().values)
    assert np.allclose(unitary.matrix, np.eye(16))


@given(displace_squeeze_values())
def test_polar_chain_rule(values):
    x, y, r1, theta1 = values
    r0 = math.hypot(x, y)
    if r0 < 1e-3:
        return
    theta0 = math.atan2(y, x)
    polar = DisplaceSqueezeChart(8, polar=True)
    cartesian = DisplaceSqueezeChart(8)
    polar_values = (r0, theta0, r1, theta1)
    a_x, a_y = cartesian_from_polar(
        polar.published_connection(polar_values, "r0"),
        polar.published_connection(polar_values, "theta0"),
        r0,
        theta0,
    )
    assert np.allclose(a_x, cartesian.published_connection(values, "x"))
    assert np.allclose(a_y, cartesian.published_connection(values, "y"))


def test_chain_rule_singular_at_origin():
    with pytest.raises(PolarSingularityError):
        cartesian_from_polar(np.eye(2), np.eye(2), 0.0, 0.0)
