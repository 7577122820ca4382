"""
The conventions ledger: every sign, phase and ordering choice that was fixed
by comparing closed-form expressions against direct numerical evaluation.

The values here are frozen. The calibration routines in control_charts,
holonomy_engine and kick_simulator recompute them from scratch and report
whether a fresh fit agrees. CONVENTIONS.md documents each entry.
"""

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum, unique

import numpy as np

from _holokerr.charts.chart_kind import ChartKind
from _holokerr.charts.su2_chart import embed_middle

# S(μ) a S†(μ) = cosh(2r) a + BOGOLIUBOV_SIGN e^{iθ} sinh(2r) a†
BOGOLIUBOV_SIGN = -1

# D(λ) a D†(λ) = a + DISPLACEMENT_SHIFT_SIGN λ
DISPLACEMENT_SHIFT_SIGN = -1


def squeeze_conjugation_coefficients(mu):
    """
    The coefficients (u, v) with S(μ) a S†(μ) = u a + v a†.
    """
    r = abs(mu)
    theta = cmath.phase(mu)
    return math.cosh(2 * r), BOGOLIUBOV_SIGN * cmath.exp(1j * theta) * math.sinh(2 * r)


def displacement_composition_phase(first, second):
    """
    The phase φ in D(λ)D(λ') = e^{iφ} D(λ + λ').
    """
    return (complex(first) * complex(second).conjugate()).imag


def _flipped(signs):
    return {name: sign for name, sign in signs.items() if sign != 1}


@dataclass(frozen=True)
class ConventionMap:
    """
    Maps a published closed-form connection onto the numerically evaluated
    one: coordinates are negated before evaluation where coordinate_signs
    says -1, the resulting matrix is scaled by the component sign and
    optionally transposed.
    """

    coordinate_signs: dict = field(default_factory=dict)
    component_signs: dict = field(default_factory=dict)
    transpose: bool = False

    def coordinate_sign(self, name):
        return self.coordinate_signs.get(name, 1)

    def component_sign(self, name):
        return self.component_signs.get(name, 1)

    def map_values(self, coordinate_names, values):
        return tuple(
            self.coordinate_sign(name) * value
            for name, value in zip(coordinate_names, values)
        )

    def apply(self, chart, values, component):
        mapped = self.map_values(chart.coordinate_names, values)
        matrix = self.component_sign(component) * np.asarray(
            chart.published_connection(mapped, component), dtype=complex
        )
        if self.transpose:
            matrix = matrix.T
        return matrix

    def as_dict(self):
        return {
            "coordinate_signs": _flipped(self.coordinate_signs),
            "component_signs": _flipped(self.component_signs),
            "transpose": self.transpose,
        }

    def same_as(self, other, names):
        return self.transpose == other.transpose and all(
            self.coordinate_sign(n) == other.coordinate_sign(n)
            and self.component_sign(n) == other.component_sign(n)
            for n in names
        )


CONNECTION_CONVENTIONS = {
    ChartKind.SINGLE_MODE_DS: ConventionMap(coordinate_signs={"theta1": -1}),
    ChartKind.SINGLE_MODE_DS_POLAR: ConventionMap(coordinate_signs={"theta1": -1}),
    ChartKind.TWO_MODE_NM: ConventionMap(),
    ChartKind.SU2_INTERFEROMETER: ConventionMap(),
}


PAULI = {
    "sigma1": np.array([[0, 1], [1, 0]], dtype=complex),
    "sigma2": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "sigma3": np.array([[1, 0], [0, -1]], dtype=complex),
}

GENERATORS = {
    **PAULI,
    "s3": -np.diag([1.0, 3.0]).astype(complex),
    "sigma1_12": embed_middle(PAULI["sigma1"]),
    "sigma2_12": embed_middle(PAULI["sigma2"]),
    "sigma3_12": embed_middle(PAULI["sigma3"]),
}

# Generator of Γ = exp(-i G Σ) for each surface family, counterclockwise in
# the (first, second) coordinate plane, as derived from the field strengths.
GENERATOR_LABELS = {
    "I": "sigma2",
    "II": "sigma1",
    "III": "s3",
    "IV": "sigma2_12",
    "V": "sigma1_12",
}

# The labels as printed next to the holonomy formulas.
PRINTED_GENERATOR_LABELS = {
    "I": "sigma1",
    "II": "sigma2",
    "III": "s3_tilde",
    "IV": "sigma2_12",
    "V": "sigma1_12",
}

# Counterclockwise rectangles on the interferometer chart give
# exp(+2i angle G); the printed exp(-2i angle G) is the clockwise traversal.
SU2_RECT_ORIENTATION = -1


def generator(which):
    return GENERATORS[GENERATOR_LABELS[which]]


@unique
class KickCount(Enum):
    M_KICKS = "m_kicks"
    M_PLUS_ONE_KICKS = "m_plus_one_kicks"


@unique
class VertexOffset(Enum):
    """
    Angular offset of the first polygon vertex: none, or half the angle
    between neighbouring vertices (π/m).
    """

    ZERO = "zero"
    HALF_STEP = "half_step"

    def angle(self, m):
        if self == VertexOffset.ZERO:
            return 0.0
        return math.pi / m


@dataclass(frozen=True)
class KickConvention:
    kick_count: KickCount = KickCount.M_KICKS
    start_at_origin: bool = True
    vertex_offset: VertexOffset = VertexOffset.ZERO

    def as_dict(self):
        return {
            "kick_count": self.kick_count.value,
            "start_at_origin": self.start_at_origin,
            "vertex_offset": self.vertex_offset.value,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            KickCount(data.get("kick_count", cls.kick_count.value)),
            bool(data.get("start_at_origin", cls.start_at_origin)),
            VertexOffset(data.get("vertex_offset", cls.vertex_offset.value)),
        )


KICK_CONVENTION = KickConvention()

# The loop of the reference table: T, X and the polygon radius.
REFERENCE_LOOP = (0.1, 1.0, 1.0)

# Percent deviations of |U_ab| for 5, 10, 20 and 26 displacers against 100,
# rows in the order 00, 01, 10, 11.
REFERENCE_M_VALUES = (5, 10, 20, 26)
REFERENCE_M = 100
REFERENCE_DEVIATIONS = np.array(
    [
        [0.2419, 0.0595, 0.0149, 0.0099],
        [0.9119, 0.2260, 0.0558, 0.0186],
        [0.9119, 0.2260, 0.0558, 0.0186],
        [1.6763, 0.4061, 0.0760, 0.0269],
    ]
)


def ledger_as_dict():
    """
    The full ledger in a JSON-serializable form.
    """
    return {
        "bogoliubov_sign": BOGOLIUBOV_SIGN,
        "displacement_shift_sign": DISPLACEMENT_SHIFT_SIGN,
        "connection_conventions": {
            kind.display_name: convention.as_dict()
            for kind, convention in CONNECTION_CONVENTIONS.items()
        },
        "generator_labels": dict(GENERATOR_LABELS),
        "printed_generator_labels": dict(PRINTED_GENERATOR_LABELS),
        "su2_rect_orientation": SU2_RECT_ORIENTATION,
        "kick_convention": KICK_CONVENTION.as_dict(),
    }
