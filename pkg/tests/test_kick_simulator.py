import math

import numpy as np
import pytest

from _holokerr.conventions import (
    KICK_CONVENTION,
    REFERENCE_DEVIATIONS,
    REFERENCE_M,
    REFERENCE_M_VALUES,
    KickConvention,
    KickCount,
    VertexOffset,
)
from _holokerr.fock_core import FockSpace, TruncationWarning
from _holokerr.kick_simulator import (
    KickSchedule,
    KickScheduleError,
    PolygonLoop,
    convention_calibration,
    convergence_order,
    deviation_table,
    kicked_evolution,
    logical_block,
)
from _holokerr.optics_ops import KerrConfigError

MIDPOINT = KickConvention(KickCount.M_KICKS, False, VertexOffset.HALF_STEP)


@pytest.mark.parametrize("m", [2, 3.5])
def test_polygon_needs_three_vertices(m):
    with pytest.raises(KickScheduleError, match="at least 3"):
        PolygonLoop(m)


def test_polygon_radius_non_negative():
    with pytest.raises(ValueError, match="non-negative"):
        PolygonLoop(5, radius=-1.0)


def test_closing_kick_returns_to_origin():
    positions = PolygonLoop(5).positions(KickCount.M_PLUS_ONE_KICKS)
    assert len(positions) == 6
    assert positions[0] == 0
    assert abs(positions[-1]) < 1e-15


def test_positions_without_translation():
    polygon = PolygonLoop(4, radius=2.0, start_at_origin=False)
    positions = polygon.positions(KickCount.M_KICKS)
    assert np.allclose(positions, [2, 2j, -2, -2j])


def test_half_step_offset():
    assert VertexOffset.HALF_STEP.angle(4) == pytest.approx(math.pi / 4)
    polygon = PolygonLoop.from_convention(4, MIDPOINT)
    assert polygon.vertices[0] == pytest.approx(math.sqrt(0.5) * (1 + 1j))


def test_schedule_time_step():
    schedule = KickSchedule(total_time=0.1)
    assert schedule.n_kicks(5) == 5
    assert schedule.dt(5) == pytest.approx(0.02)
    closing = KickSchedule(kick_count=KickCount.M_PLUS_ONE_KICKS)
    assert closing.dt(5) == pytest.approx(0.1 / 6)


def test_schedule_needs_positive_time():
    with pytest.raises(KickScheduleError, match="positive"):
        KickSchedule(total_time=0.0)


def test_schedule_needs_non_negative_coupling():
    with pytest.raises(KerrConfigError):
        KickSchedule(coupling=-1.0)


def test_kicked_evolution_is_unitary():
    space = FockSpace(1, 32)
    assert kicked_evolution(PolygonLoop(5), KickSchedule(), space).is_unitary()


def test_off_diagonal_magnitudes_agree():
    block = logical_block(PolygonLoop(5), KickSchedule())
    assert abs(block[0, 1]) == pytest.approx(abs(block[1, 0]), abs=1e-10)
    assert abs(block[0, 1]) > 1e-6


def test_kicks_need_a_single_mode():
    with pytest.raises(KickScheduleError, match="single mode"):
        kicked_evolution(PolygonLoop(5), KickSchedule(), FockSpace(2, 4))


def test_large_loop_warns():
    with pytest.warns(TruncationWarning, match="Kick loop"):
        kicked_evolution(PolygonLoop(3, radius=3.0), KickSchedule(), FockSpace(1, 8))


def test_deviation_table_shape():
    report = deviation_table((5, 10), 20, KickSchedule(), cutoff=16)
    assert report.magnitudes.shape == (4, 2)
    assert report.deviations.shape == (4, 2)
    assert report.flagged == ()
    rows = report.rows()
    assert [row["entry"] for row in rows] == ["00", "01", "10", "11"]
    assert set(rows[0]) == {"entry", "m=5", "m=10", "|U|(m=20)"}
    assert report.symmetry_defect < 1e-8


def test_reference_below_largest_m():
    with pytest.raises(KickScheduleError, match="smaller"):
        deviation_table((5, 10), 8, KickSchedule(), cutoff=8)


def test_free_evolution_flags_vanishing_entries():
    report = deviation_table((5,), 10, KickSchedule(coupling=0.0), cutoff=12)
    assert report.flagged == ("01", "10")
    assert np.all(np.isnan(report.deviations[1:3]))
    assert report.deviations[0, 0] < 1e-8
    assert report.rows()[1]["m=5"] == "flagged"


def test_midpoint_scheme_converges_at_second_order():
    m_values = (5, 10, 20, 40, 80)
    slope, errors = convergence_order(m_values, 400, KickSchedule(), MIDPOINT)
    assert -2.3 <= slope <= -1.7
    assert errors[-1] < errors[0]


def test_ledger_convention_converges_at_second_order():
    slope, _ = convergence_order((5, 10, 20, 40, 80), 400, KickSchedule())
    assert -2.3 <= slope <= -1.7


def test_closing_kick_at_origin_is_first_order():
    closing = KickConvention(KickCount.M_PLUS_ONE_KICKS, True, VertexOffset.ZERO)
    slope, _ = convergence_order((5, 10, 20, 40, 80), 400, KickSchedule(), closing)
    assert -1.2 <= slope <= -0.8


@pytest.fixture(scope="module")
def reference_report():
    return deviation_table(REFERENCE_M_VALUES, REFERENCE_M, KickSchedule())


def test_reference_table_rows_are_symmetric(reference_report):
    assert reference_report.symmetry_defect < 1e-10
    assert reference_report.flagged == ()


def test_reference_table_decreases_with_m(reference_report):
    for row in reference_report.deviations:
        assert np.all(np.diff(row) < 0)


def test_reference_table_has_reference_shape(reference_report):
    assert reference_report.deviations.shape == REFERENCE_DEVIATIONS.shape
    assert np.all(reference_report.deviations > 0)


def test_kicked_evolution_survives_cutoff_doubling():
    polygon = PolygonLoop(10)
    coarse = logical_block(polygon, KickSchedule(), cutoff=32)
    fine = logical_block(polygon, KickSchedule(), cutoff=64)
    assert np.max(np.abs(coarse - fine)) < 1e-8


def test_closing_kick_only_adds_a_diagonal_phase():
    polygon = PolygonLoop(7)
    open_block = logical_block(polygon, KickSchedule(total_time=0.1))
    closing = KickSchedule(0.1 * 8 / 7, kick_count=KickCount.M_PLUS_ONE_KICKS)
    closed_block = logical_block(polygon, closing)
    assert np.allclose(np.abs(closed_block), np.abs(open_block), atol=1e-12)


@pytest.fixture(scope="module")
def calibration():
    return convention_calibration()


def test_convention_calibration_scores_every_combination(calibration):
    assert len(calibration.scores) == 8
    assert len({score.convention for score in calibration.scores}) == 8
    assert calibration.scores[0].convention == KICK_CONVENTION
    best = min(score.total_relative_error for score in calibration.scores)
    assert calibration.selected.total_relative_error <= best * (1 + 1e-9)


def test_convention_calibration_agrees_with_ledger(calibration):
    assert calibration.agrees_with_ledger
    assert calibration.selected.convention == KICK_CONVENTION


def test_vertex_offset_ties_when_starting_at_origin(calibration):
    totals = {
        score.convention.vertex_offset: score.total_relative_error
        for score in calibration.scores
        if score.convention.kick_count == KICK_CONVENTION.kick_count
        and score.convention.start_at_origin
    }
    assert totals[VertexOffset.ZERO] == pytest.approx(
        totals[VertexOffset.HALF_STEP], rel=1e-9
    )


def test_calibration_reports_order_on_request():
    calibration = convention_calibration(
        cutoff=16, with_order=True, order_m_values=(5, 10, 20), order_reference_m=80
    )
    assert all(score.order < 0 for score in calibration.scores)
