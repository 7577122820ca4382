import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from _holokerr.charts import DisplaceSqueezeChart, SU2Chart, TwoModeChart, make_chart
from _holokerr.conventions import GENERATORS, GENERATOR_LABELS
from _holokerr.holonomy_engine import (
    SURFACE_FAMILIES,
    Holonomy,
    LoopError,
    LoopPath,
    PlanarRegion,
    Route,
    berry_phase_displace,
    berry_phase_squeeze,
    converged_holonomy,
    holonomy_from_sigma,
    path_ordered_holonomy,
    reconcile_generator,
    small_loop_phases,
    stokes_holonomy,
    su2_rect_gate,
    su2_rect_region,
    surface_family,
    surface_holonomy,
    surface_sigma,
)

BOUNDS = {
    "I": ((0.0, 0.5), (0.1, 0.4)),
    "II": ((-0.2, 0.3), (0.0, 0.5)),
    "III": ((0.1, 0.4), (0.0, 1.0)),
    "IV": ((0.0, 0.3), (0.0, 0.8)),
    "V": ((0.1, 0.3), (0.2, 0.8)),
}


def family_region(which, orientation=1):
    family = SURFACE_FAMILIES[which]
    return PlanarRegion(
        make_chart(family.chart_kind),
        family.plane,
        BOUNDS[which],
        family.frozen,
        orientation=orientation,
    )


def test_open_loop_rejected():
    chart = DisplaceSqueezeChart(8)
    with pytest.raises(LoopError, match="Closed loop ends"):
        LoopPath(chart, (chart.origin(), chart.point(x=1.0)))


def test_open_path_allowed_when_not_closed():
    chart = DisplaceSqueezeChart(8)
    path = LoopPath(chart, (chart.origin(), chart.point(x=1.0)), closed=False)
    with pytest.raises(LoopError, match="closed loop"):
        path_ordered_holonomy(path)


def test_angle_sweep_is_closed():
    loop = LoopPath.sweep(DisplaceSqueezeChart(8), "theta1", steps_per_edge=10)
    assert loop.varying_coordinates() == ("theta1",)


def test_sweep_needs_periodic_coordinate():
    with pytest.raises(LoopError, match="not a periodic coordinate"):
        LoopPath.sweep(DisplaceSqueezeChart(8), "r1")


def test_zero_steps_rejected():
    chart = SU2Chart()
    with pytest.raises(LoopError):
        LoopPath(chart, (chart.origin(), chart.origin()), steps_per_edge=0)


def test_reversed_loop_gives_inverse():
    chart = DisplaceSqueezeChart()
    base = chart.point(r1=0.2, theta1=0.3)
    loop = LoopPath.rectangle(
        chart, ("x", "y"), ((0.0, 0.3), (-0.1, 0.2)), base, steps_per_edge=8
    )
    forward = path_ordered_holonomy(loop)
    backward = path_ordered_holonomy(loop.reversed())
    assert np.max(np.abs(backward.matrix @ forward.matrix - np.eye(2))) < 1e-10


def test_path_ordered_is_unitary():
    chart = SU2Chart()
    loop = LoopPath.circle(chart, ("beta", "gamma"), (0.2, 0.1), 0.5, n_vertices=32)
    assert path_ordered_holonomy(loop).unitarity_defect < 1e-12


@pytest.mark.parametrize("which", sorted(SURFACE_FAMILIES))
def test_surface_route_matches_path_ordered(which):
    region = family_region(which)
    surface = surface_holonomy(region, which)
    ordered = path_ordered_holonomy(region.boundary(steps_per_edge=4))
    assert surface.route == Route.SURFACE
    assert surface.distance(ordered) < 1e-8


@pytest.mark.parametrize("which", sorted(SURFACE_FAMILIES))
def test_clockwise_surface_route(which):
    region = family_region(which, orientation=-1)
    ordered = path_ordered_holonomy(region.boundary(steps_per_edge=4))
    assert surface_holonomy(region, which).distance(ordered) < 1e-8


@pytest.mark.parametrize("which", sorted(SURFACE_FAMILIES))
def test_quadrature_matches_closed_form(which):
    region = family_region(which)
    closed_form = surface_sigma(region, which)
    quadrature = surface_sigma(region, which, method="quadrature")
    assert quadrature == pytest.approx(closed_form, abs=1e-10)


def test_orientation_flips_sigma():
    region = family_region("III")
    assert surface_sigma(region.reversed(), "III") == -surface_sigma(region, "III")


def test_sigma_closed_form_value():
    region = family_region("I")
    expected = 0.5 * (math.exp(-0.2) - math.exp(-0.8))
    assert surface_sigma(region, "I") == pytest.approx(expected)


def test_frozen_angle_mismatch():
    family = SURFACE_FAMILIES["I"]
    region = PlanarRegion(
        DisplaceSqueezeChart(), family.plane, BOUNDS["I"], {"theta1": 0.5}
    )
    with pytest.raises(LoopError, match="requires theta1"):
        surface_sigma(region, "I")


def test_plane_mismatch():
    with pytest.raises(LoopError, match="plane"):
        surface_sigma(family_region("I"), "II")


def test_chart_mismatch():
    with pytest.raises(LoopError, match="lives on"):
        surface_sigma(family_region("IV"), "I")


def test_unknown_family():
    with pytest.raises(ValueError, match="Unknown surface family"):
        surface_family("VI")


def test_unknown_sigma_method():
    with pytest.raises(ValueError, match="Unknown method"):
        surface_sigma(family_region("I"), "I", method="trapezoid")


@pytest.mark.parametrize(
    "bounds",
    [((0.5, 0.0), (0.0, 1.0)), ((0.0, math.inf), (0.0, 1.0))],
)
def test_degenerate_bounds(bounds):
    with pytest.raises(LoopError, match="Degenerate"):
        PlanarRegion(SU2Chart(), ("alpha", "beta"), bounds)


def test_plane_coordinates_must_differ():
    with pytest.raises(LoopError, match="distinct"):
        PlanarRegion(SU2Chart(), ("alpha", "alpha"), ((0, 1), (0, 1)))


def test_zero_extent_region_gives_identity():
    region = PlanarRegion(SU2Chart(), ("alpha", "beta"), ((0.0, math.pi), (0.0, 0.0)))
    assert region.area == 0
    assert np.allclose(stokes_holonomy(region).matrix, np.eye(4))


def test_region_from_rectangle_loop():
    chart = SU2Chart()
    loop = LoopPath.rectangle(
        chart, ("alpha", "gamma"), ((0.0, 1.0), (0.0, 0.5)), orientation=-1
    )
    region = PlanarRegion.from_loop(loop)
    assert region.plane == ("alpha", "gamma")
    assert region.bounds == ((0.0, 1.0), (0.0, 0.5))
    assert region.orientation == -1
    assert region.frozen == {"beta": 0.0}


def test_region_from_non_rectangle():
    loop = LoopPath.circle(SU2Chart(), ("alpha", "beta"), (0.0, 0.0), 1.0, 16)
    with pytest.raises(LoopError, match="rectangle"):
        PlanarRegion.from_loop(loop)


@pytest.mark.parametrize("kind", ["C1", "C2"])
@pytest.mark.parametrize("angle", [0.2, math.pi / 4, 1.0])
def test_interferometer_rectangles(kind, angle):
    region = su2_rect_region(kind, angle)
    ordered = path_ordered_holonomy(region.boundary(steps_per_edge=4))
    assert ordered.distance(su2_rect_gate(kind, angle)) < 1e-8


def test_counterclockwise_rectangle_is_inverse_gate():
    region = su2_rect_region("C1", 0.3, orientation=1)
    ordered = path_ordered_holonomy(region.boundary(steps_per_edge=4))
    assert ordered.distance(su2_rect_gate("C1", -0.3)) < 1e-8


def test_negative_rectangle_angle():
    region = su2_rect_region("C2", -0.4)
    ordered = path_ordered_holonomy(region.boundary(steps_per_edge=4))
    assert ordered.distance(su2_rect_gate("C2", -0.4)) < 1e-8


def test_unknown_rectangle():
    with pytest.raises(ValueError, match="C1 or C2"):
        su2_rect_gate("C3", 0.1)


def test_closed_form_gate_generator():
    gate = su2_rect_gate("C1", math.pi / 4)
    assert np.allclose(gate.matrix, expm(-0.5j * math.pi * GENERATORS["sigma2_12"]))
    assert gate.route == Route.CLOSED_FORM


@pytest.mark.parametrize("kind, angle", [("C1", math.pi / 4), ("C2", 1.0)])
def test_stokes_route_on_interferometer(kind, angle):
    region = su2_rect_region(kind, angle)
    stokes = stokes_holonomy(region, slices=32, order=12)
    ordered = path_ordered_holonomy(region.boundary(steps_per_edge=4))
    assert stokes.route == Route.STOKES
    assert stokes.distance(ordered) < 1e-5


def test_stokes_route_on_abelian_plane():
    region = family_region("III")
    stokes = stokes_holonomy(region, slices=8, order=8)
    assert stokes.distance(surface_holonomy(region, "III")) < 1e-8


def test_stokes_accepts_rectangle_loop():
    region = su2_rect_region("C2", 0.5)
    from_loop = stokes_holonomy(region.boundary(), slices=16, order=8)
    from_region = stokes_holonomy(region, slices=16, order=8)
    assert from_loop.distance(from_region) < 1e-12


def test_stokes_needs_lower_corner_start():
    chart = SU2Chart()
    corners = [(1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]
    loop = LoopPath.polygon(chart, ("alpha", "beta"), corners)
    with pytest.raises(LoopError, match="lower corner"):
        stokes_holonomy(loop)


@pytest.mark.parametrize("which", sorted(SURFACE_FAMILIES))
def test_reconciled_generators_match_ledger(which):
    reconciled = reconcile_generator(which, source="analytic")
    assert reconciled.label == GENERATOR_LABELS[which]
    assert reconciled.matches_ledger
    assert reconciled.residual < 1e-6


def test_reconcile_from_numeric_connection():
    reconciled = reconcile_generator("I")
    assert reconciled.matches_ledger
    assert reconciled.printed_label == "sigma1"


@given(st.floats(min_value=-3.0, max_value=3.0))
def test_holonomy_from_sigma_is_unitary(sigma):
    for which in SURFACE_FAMILIES:
        assert holonomy_from_sigma(which, sigma).unitarity_defect < 1e-12


def test_holonomy_phases_and_inverse():
    holonomy = Holonomy(np.diag([1j, -1.0]), Route.SURFACE)
    assert holonomy.phases() == pytest.approx((math.pi / 2, math.pi))
    assert np.allclose(holonomy.inverse().matrix @ holonomy.matrix, np.eye(2))


def test_converged_holonomy():
    region = su2_rect_region("C1", 0.5)
    converged = converged_holonomy(region.boundary(steps_per_edge=2))
    assert converged.distance(su2_rect_gate("C1", 0.5)) < 1e-8


def squeeze_loop(orientation=1):
    return LoopPath.rectangle(
        DisplaceSqueezeChart(),
        ("r1", "theta1"),
        ((0.1, 0.3), (0.0, 0.5)),
        steps_per_edge=4,
        orientation=orientation,
    )


def test_squeeze_phases_ratio():
    phi0 = berry_phase_squeeze(squeeze_loop(), 0)
    phi1 = berry_phase_squeeze(squeeze_loop(), 1)
    assert phi0 == pytest.approx(0.125 * (math.cosh(1.2) - math.cosh(0.4)))
    assert phi1 / phi0 == pytest.approx(3.0, rel=1e-12)


def test_squeeze_phase_reverses_with_loop():
    forward = berry_phase_squeeze(squeeze_loop(), 1)
    assert berry_phase_squeeze(squeeze_loop(orientation=-1), 1) == pytest.approx(
        -forward
    )


def test_squeeze_phase_with_radial_differential_vanishes():
    assert berry_phase_squeeze(squeeze_loop(), 0, differential="r1") == pytest.approx(
        0.0, abs=1e-12
    )


@pytest.mark.parametrize(
    "bounds", [((0.1, 0.3), (0.0, 0.5)), ((0.0, 0.4), (0.0, 2 * math.pi))]
)
def test_squeeze_phases_match_holonomy(bounds):
    loop = LoopPath.rectangle(
        DisplaceSqueezeChart(), ("r1", "theta1"), bounds, steps_per_edge=4
    )
    phases = path_ordered_holonomy(loop).phases()
    for level in (0, 1):
        phi = berry_phase_squeeze(loop, level)
        mismatch = math.remainder(phi - phases[level], 2 * math.pi)
        assert abs(mismatch) < 1e-10


def test_squeeze_phase_level():
    with pytest.raises(ValueError, match="level"):
        berry_phase_squeeze(squeeze_loop(), 2)


def test_squeeze_phase_needs_its_plane():
    loop = LoopPath.rectangle(
        DisplaceSqueezeChart(), ("x", "r1"), ((0.0, 0.1), (0.0, 0.1))
    )
    with pytest.raises(LoopError, match="plane"):
        berry_phase_squeeze(loop, 0)


def test_squeeze_phase_needs_single_mode_chart():
    loop = LoopPath.rectangle(TwoModeChart(), ("r2", "r3"), ((0.0, 0.1), (0.0, 0.1)))
    with pytest.raises(LoopError, match="expected one of"):
        berry_phase_squeeze(loop, 0)


def test_small_displacement_square_follows_area_law():
    epsilon = 0.01
    loop = LoopPath.rectangle(
        DisplaceSqueezeChart(), ("x", "y"), ((0.0, epsilon), (0.0, epsilon))
    )
    phases = berry_phase_displace(loop)
    assert phases.area_integral == pytest.approx(-2 * epsilon**2, rel=1e-9)
    for abelian in phases.abelian_phases:
        assert abelian == pytest.approx(-phases.area_integral, abs=1e-12)
    expected = small_loop_phases(phases.area_integral)
    assert phases.phases == pytest.approx(expected, abs=epsilon**3)


def test_small_displacement_square_splits_levels():
    epsilon = 0.01
    loop = LoopPath.rectangle(
        DisplaceSqueezeChart(), ("x", "y"), ((0.0, epsilon), (0.0, epsilon))
    )
    phases = berry_phase_displace(loop)
    assert phases.phases[0] == pytest.approx(4 * epsilon**2, rel=1e-2)
    assert abs(phases.phases[1]) < epsilon**3


def test_displacement_levels_differ_on_unit_circle():
    loop = LoopPath.circle(DisplaceSqueezeChart(), ("x", "y"), (0.0, 0.0), 1.0)
    phases = berry_phase_displace(loop)
    assert abs(phases.difference) > 1e-3


def test_displacement_loop_needs_zero_squeezing():
    loop = LoopPath.rectangle(
        DisplaceSqueezeChart(),
        ("x", "y"),
        ((0.0, 0.1), (0.0, 0.1)),
        base={"r1": 0.2},
    )
    with pytest.raises(LoopError, match="r1 = 0"):
        berry_phase_displace(loop)


def test_loops_through_a_shared_base_compose():
    chart = DisplaceSqueezeChart(12)
    base = chart.point(r1=0.2)
    first = [(0.0, 0.0), (0.3, 0.0), (0.3, 0.2), (0.0, 0.2)]
    second = [(0.0, 0.0), (0.0, -0.2), (-0.25, -0.2), (-0.25, 0.0)]

    def holonomy(corners):
        loop = LoopPath.polygon(chart, ("x", "y"), corners, base, steps_per_edge=4)
        return path_ordered_holonomy(loop)

    composite = holonomy(first + second)
    expected = holonomy(second).matrix @ holonomy(first).matrix
    assert composite.distance(expected) < 1e-10
