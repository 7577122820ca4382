"""
Logical gates from holonomies: qubit encodings, rotations planned from loop
areas, the dual-rail SWAP, and composition of gate plans on the full
multimode Fock space.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum, unique

import numpy as np

from _holokerr.charts import DisplaceSqueezeChart
from _holokerr.fock_core import (
    CodeBlock,
    FockSpace,
    embed_block,
    embed_operator,
    leakage,
    project_block,
)
from _holokerr.holonomy_engine import (
    PlanarRegion,
    holonomy_from_sigma,
    su2_rect_gate,
    surface_family,
    surface_sigma,
)

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 4
PLAN_EXTENT = 1.0

# Rotation axis to (surface family, coordinate solved for)
ROTATION_FAMILIES = {
    "X": ("II", "y"),
    "Y": ("I", "x"),
    "Z": ("III", "theta1"),
}


class EncodingError(Exception):
    """
    Raised when beams are not distinct, or a gate step does not fit the
    encoding it targets.
    """

    pass


@unique
class EncodingKind(Enum):
    SINGLE_MODE = "single-mode"
    DUAL_RAIL = "dual-rail"


@dataclass(frozen=True)
class QubitEncoding:
    """
    A logical qubit: {|0>, |1>} of one mode, or {|01>, |10>} of a pair.
    """

    kind: EncodingKind
    modes: tuple

    def __post_init__(self):
        modes = tuple(int(m) for m in self.modes)
        expected = 1 if self.kind == EncodingKind.SINGLE_MODE else 2
        if len(modes) != expected:
            raise EncodingError(
                f"{self.kind.value} encoding takes {expected} modes, got {modes}"
            )
        if len(set(modes)) != len(modes):
            raise EncodingError(f"Dual-rail modes must be distinct, got {modes}")
        if any(m < 0 for m in modes):
            raise EncodingError(f"Mode indices must be non-negative, got {modes}")
        object.__setattr__(self, "modes", modes)

    @classmethod
    def single_mode(cls, mode):
        return cls(EncodingKind.SINGLE_MODE, (mode,))

    @classmethod
    def dual_rail(cls, first, second):
        return cls(EncodingKind.DUAL_RAIL, (first, second))

    @property
    def logical_states(self):
        """
        Occupations of the encoding's modes for |0>_L and |1>_L.
        """
        if self.kind == EncodingKind.SINGLE_MODE:
            return ((0,), (1,))
        return ((0, 1), (1, 0))


@dataclass(frozen=True, eq=False)
class GateStep:
    """
    A block unitary over the Kerr ground block of the given modes, e.g. a
    2x2 on {|0>, |1>} of one mode or a 4x4 on {|00>, ..., |11>} of a pair.
    """

    label: str
    block_unitary: np.ndarray
    modes: tuple

    def __post_init__(self):
        matrix = np.array(self.block_unitary, dtype=complex)
        expected = 2 ** len(self.modes)
        if matrix.shape != (expected, expected):
            raise EncodingError(
                f"Step {self.label} has a {matrix.shape} block for modes {self.modes}"
            )
        if len(set(self.modes)) != len(self.modes):
            raise EncodingError(f"Step {self.label} repeats a mode: {self.modes}")
        object.__setattr__(self, "block_unitary", matrix)
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))


@dataclass(frozen=True, eq=False)
class GatePlan:
    """
    Steps are applied in list order, the first step rightmost in the
    product.
    """

    encodings: tuple
    steps: tuple = field(default_factory=tuple)
    expected: object = None

    def __post_init__(self):
        object.__setattr__(self, "encodings", tuple(self.encodings))
        object.__setattr__(self, "steps", tuple(self.steps))
        modes = [m for encoding in self.encodings for m in encoding.modes]
        if len(set(modes)) != len(modes):
            raise EncodingError(f"Encodings share modes: {modes}")
        owners = {m: e for e in self.encodings for m in e.modes}
        for step in self.steps:
            wanted = EncodingKind.DUAL_RAIL
            if len(step.modes) == 1:
                wanted = EncodingKind.SINGLE_MODE
            for mode in step.modes:
                if mode in owners and owners[mode].kind != wanted:
                    raise EncodingError(
                        f"Step {step.label} on mode {mode} does not fit its "
                        f"{owners[mode].kind.value} encoding"
                    )

    @property
    def n_modes(self):
        modes = [m for e in self.encodings for m in e.modes]
        modes += [m for s in self.steps for m in s.modes]
        return max(modes) + 1 if modes else 1

    def logical_block(self):
        """
        The product basis of the encodings, first qubit most significant.
        """
        n_modes = self.n_modes
        states = []
        for choice in itertools.product(*(e.logical_states for e in self.encodings)):
            occupation = [0] * n_modes
            for encoding, local in zip(self.encodings, choice):
                for mode, nu in zip(encoding.modes, local):
                    occupation[mode] = nu
            states.append(tuple(occupation))
        return CodeBlock(tuple(states))


def plan_rotation(axis, angle):
    """
    A rectangle whose surface integral equals the angle. The r1 extent is
    fixed to [0, 1] and the remaining extent solved for; negative angles
    reverse the orientation.

    X rotations use the (y, r1) plane, Y rotations the (x, r1) plane and Z
    rotations the (r1, θ1) plane.
    """
    try:
        which, solved = ROTATION_FAMILIES[axis]
    except KeyError as err:
        raise ValueError(f"Unknown axis {axis!r}, expected X, Y or Z") from err
    family = surface_family(which)
    chart = DisplaceSqueezeChart()
    unit_bounds = [(0.0, 1.0), (0.0, 1.0)]
    per_unit = family.integral(unit_bounds)
    extent = abs(angle) / per_unit
    bounds = [(0.0, PLAN_EXTENT), (0.0, PLAN_EXTENT)]
    bounds[family.plane.index(solved)] = (0.0, extent)
    return PlanarRegion(
        chart,
        family.plane,
        tuple(bounds),
        dict(family.frozen),
        orientation=-1 if angle < 0 else 1,
    )


def rotation_step(axis, angle, encoding):
    """
    The surface-route holonomy of plan_rotation as a gate step on a
    single-mode encoding.
    """
    if encoding.kind != EncodingKind.SINGLE_MODE:
        raise EncodingError(
            f"{axis} rotations act on single-mode qubits, got {encoding.kind.value}"
        )
    which, _ = ROTATION_FAMILIES[axis]
    region = plan_rotation(axis, angle)
    holonomy = holonomy_from_sigma(which, surface_sigma(region, which))
    return GateStep(f"{axis}({angle:.6g})", holonomy.matrix, encoding.modes)


def interferometer_step(kind, angle, modes):
    """
    A closed-form interferometer rectangle gate on a pair of modes.
    """
    modes = tuple(modes)
    if len(modes) != 2 or modes[0] == modes[1]:
        raise EncodingError(
            f"Interferometer gates need two distinct modes, got {modes}"
        )
    return GateStep(f"{kind}({angle:.6g})", su2_rect_gate(kind, angle).matrix, modes)


def _step_operator(step, space):
    local = FockSpace(len(step.modes), space.cutoff)
    block = CodeBlock.kerr_ground(len(step.modes))
    matrix = embed_block(local, block, step.block_unitary).matrix
    return embed_operator(space, step.modes, matrix)


@dataclass(frozen=True, eq=False)
class PlanResult:
    logical: np.ndarray
    leakage: float
    distance: float = float("nan")


def compose_plan(plan, cutoff=DEFAULT_CUTOFF):
    """
    Multiplies the plan's steps as block-diagonal operators on the full
    multimode space and projects the product onto the logical basis.

    :returns: PlanResult with the logical matrix, the leakage out of the
        logical basis and, when the plan has an expected matrix, the
        global-phase-aligned distance to it.
    """
    block = plan.logical_block()
    space = FockSpace(plan.n_modes, cutoff)
    product = space.identity()
    for step in plan.steps:
        product = _step_operator(step, space) @ product
    logical = project_block(product, block)
    result_leakage = leakage(product, block)
    distance = float("nan")
    if plan.expected is not None:
        distance = phase_aligned_distance(logical, plan.expected)
    logger.debug(
        "Composed %d steps on %d modes, leakage %.3e",
        len(plan.steps),
        space.n_modes,
        result_leakage,
    )
    return PlanResult(logical, result_leakage, distance)


def align_global_phase(matrix, tolerance=1e-12):
    """
    Rotates the global phase so that the first entry (row-major) with
    magnitude above tolerance is real and positive.
    """
    matrix = np.asarray(matrix, dtype=complex)
    for entry in matrix.flat:
        if abs(entry) > tolerance:
            return matrix * (abs(entry) / entry)
    return matrix


def phase_aligned_distance(first, second):
    """
    ‖first - second‖_max after aligning both global phases.
    """
    return float(
        np.max(np.abs(align_global_phase(first) - align_global_phase(second)))
    )


SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)


def swap_plan(beams=(0, 1, 2, 3)):
    """
    Qubit 1 on the dual rail (b1, b2), qubit 2 on (b3, b4); the C1 gate at
    β = π/4 acts on (b1, b3) and at β = 3π/4 on (b2, b4).
    """
    beams = tuple(beams)
    if len(beams) != 4 or len(set(beams)) != 4:
        raise EncodingError(f"SWAP needs four distinct beams, got {beams}")
    b1, b2, b3, b4 = beams
    return GatePlan(
        (QubitEncoding.dual_rail(b1, b2), QubitEncoding.dual_rail(b3, b4)),
        (
            interferometer_step("C1", math.pi / 4, (b1, b3)),
            interferometer_step("C1", 3 * math.pi / 4, (b2, b4)),
        ),
        SWAP,
    )


def swap_gate(beams=(0, 1, 2, 3), cutoff=DEFAULT_CUTOFF):
    """
    The 4x4 logical matrix of the dual-rail SWAP construction on the basis
    |0101>, |0110>, |1001>, |1010> of the beams.
    """
    return compose_plan(swap_plan(beams), cutoff).logical
