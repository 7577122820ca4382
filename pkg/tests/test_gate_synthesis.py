import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from _holokerr.conventions import PAULI
from _holokerr.gate_synthesis import (
    SWAP,
    EncodingError,
    EncodingKind,
    GatePlan,
    QubitEncoding,
    align_global_phase,
    compose_plan,
    interferometer_step,
    phase_aligned_distance,
    plan_rotation,
    rotation_step,
    swap_gate,
    swap_plan,
)
from _holokerr.holonomy_engine import surface_sigma


def test_swap_is_exact():
    assert np.allclose(swap_gate(), SWAP, atol=1e-8)


def test_swap_does_not_leak():
    result = compose_plan(swap_plan())
    assert result.leakage < 1e-10
    assert result.distance < 1e-8


def test_swap_squared_is_identity():
    gate = swap_gate()
    assert np.allclose(gate @ gate, np.eye(4), atol=1e-8)


def test_swap_on_permuted_beams():
    assert np.allclose(swap_gate((3, 1, 0, 2)), SWAP, atol=1e-8)


@pytest.mark.parametrize("beams", [(0, 1, 2, 2), (0, 1, 2)])
def test_swap_needs_four_distinct_beams(beams):
    with pytest.raises(EncodingError, match="four distinct beams"):
        swap_plan(beams)


def test_swap_logical_basis():
    block = swap_plan().logical_block()
    assert block.basis_states == (
        (0, 1, 0, 1),
        (0, 1, 1, 0),
        (1, 0, 0, 1),
        (1, 0, 1, 0),
    )


@given(st.floats(min_value=-2 * math.pi, max_value=2 * math.pi))
def test_planned_area_matches_angle(angle):
    for axis, which in [("X", "II"), ("Y", "I"), ("Z", "III")]:
        region = plan_rotation(axis, angle)
        assert surface_sigma(region, which) == pytest.approx(angle, abs=1e-10)


def test_unknown_axis():
    with pytest.raises(ValueError, match="Unknown axis"):
        plan_rotation("W", 0.1)


def test_z_rotation():
    step = rotation_step("Z", 0.3, QubitEncoding.single_mode(0))
    expected = np.diag([cmath.exp(0.3j), cmath.exp(0.9j)])
    assert np.allclose(step.block_unitary, expected)


def test_x_rotation():
    step = rotation_step("X", 0.4, QubitEncoding.single_mode(0))
    assert np.allclose(step.block_unitary, expm(-0.4j * PAULI["sigma1"]))


def test_rotation_needs_single_mode_qubit():
    with pytest.raises(EncodingError, match="single-mode"):
        rotation_step("X", 0.1, QubitEncoding.dual_rail(0, 1))


def test_composed_rotations_add():
    encoding = QubitEncoding.single_mode(0)
    plan = GatePlan(
        (encoding,),
        (rotation_step("Z", 0.2, encoding), rotation_step("Z", 0.3, encoding)),
        np.diag([cmath.exp(0.5j), cmath.exp(1.5j)]),
    )
    result = compose_plan(plan)
    assert result.distance < 1e-10
    assert result.leakage < 1e-10


def test_step_order_is_right_to_left():
    encoding = QubitEncoding.single_mode(0)
    first = rotation_step("X", 0.3, encoding)
    second = rotation_step("Y", 0.5, encoding)
    result = compose_plan(GatePlan((encoding,), (first, second)))
    expected = second.block_unitary @ first.block_unitary
    assert np.allclose(result.logical, expected)


@pytest.mark.parametrize(
    "build, message",
    [
        (lambda: QubitEncoding.dual_rail(1, 1), "distinct"),
        (lambda: QubitEncoding.single_mode(-1), "non-negative"),
        (lambda: QubitEncoding(EncodingKind.SINGLE_MODE, (0, 1)), "takes 1 modes"),
        (
            lambda: GatePlan(
                (QubitEncoding.single_mode(0), QubitEncoding.dual_rail(0, 1))
            ),
            "share",
        ),
        (lambda: interferometer_step("C1", 0.1, (2, 2)), "two distinct modes"),
    ],
)
def test_invalid_encodings(build, message):
    with pytest.raises(EncodingError, match=message):
        build()


def test_step_must_fit_encoding():
    with pytest.raises(EncodingError, match="does not fit"):
        GatePlan(
            (QubitEncoding.single_mode(0), QubitEncoding.single_mode(1)),
            (interferometer_step("C1", 0.3, (0, 1)),),
        )


def test_align_global_phase():
    assert np.allclose(align_global_phase(1j * SWAP), SWAP)
    assert np.all(align_global_phase(np.zeros((2, 2))) == 0)


def test_phase_aligned_distance_ignores_global_phase():
    assert phase_aligned_distance(SWAP, cmath.exp(0.7j) * SWAP) < 1e-12
    assert phase_aligned_distance(SWAP, np.eye(4)) == pytest.approx(1.0)


def test_opposite_x_rotations_cancel():
    encoding = QubitEncoding.single_mode(0)
    plan = GatePlan(
        (encoding,),
        (
            rotation_step("X", -math.pi / 2, encoding),
            rotation_step("X", math.pi / 2, encoding),
        ),
        np.eye(2),
    )
    result = compose_plan(plan)
    assert result.distance < 1e-10
    assert result.leakage < 1e-10


def test_z_conjugation_turns_the_x_axis():
    encoding = QubitEncoding.single_mode(0)
    plan = GatePlan(
        (encoding,),
        (
            rotation_step("Z", -math.pi / 4, encoding),
            rotation_step("X", math.pi / 2, encoding),
            rotation_step("Z", math.pi / 4, encoding),
        ),
    )
    turn = np.diag([cmath.exp(0.25j * math.pi), cmath.exp(0.75j * math.pi)])
    expected = turn @ expm(-0.5j * math.pi * PAULI["sigma1"]) @ turn.conj().T
    result = compose_plan(plan)
    assert phase_aligned_distance(result.logical, expected) < 1e-10
    assert result.leakage < 1e-10
