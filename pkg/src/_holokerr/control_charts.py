"""
Wilczek-Zee connections of the control charts, their field strengths and
commutators.

The connection component along σ_i is the matrix

    A_{σ_i}^{ρ̄ρ} = ⟨ρ̄| U†(σ) ∂_{σ_i} U(σ) |ρ⟩

over the chart's code block. It is available from two sources: "numeric",
a finite-difference evaluation of the definition, and "analytic", the
published closed forms passed through the convention map recorded in
_holokerr.conventions.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from _holokerr.conventions import CONNECTION_CONVENTIONS, ConventionMap
from _holokerr.fock_core import commutator

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-5
ANALYTIC_OUTER_STEP = 1e-5
NUMERIC_OUTER_STEP = 1e-4
TRUNCATION_TOLERANCE = 1e-6
SOURCES = ("analytic", "numeric")

# S(μ) squeezes by 2 r1, so r1 stays where the default cutoffs resolve it.
PROBE_RANGES = {
    "x": (-0.6, 0.6),
    "y": (-0.6, 0.6),
    "r0": (0.1, 0.6),
    "r1": (0.0, 0.25),
    "r2": (0.0, 0.4),
    "r3": (0.0, 1.0),
    "theta0": (-math.pi, math.pi),
    "theta1": (-math.pi, math.pi),
    "theta2": (-math.pi, math.pi),
    "theta3": (-math.pi, math.pi),
    "alpha": (-math.pi, math.pi),
    "beta": (-math.pi, math.pi),
    "gamma": (-math.pi, math.pi),
}


class TruncationConvergenceError(Exception):
    """
    Raised when doubling the Fock cutoff moves a connection entry by more
    than the accepted tolerance.
    """

    pass


@dataclass(frozen=True, eq=False)
class ConnectionSample:
    """
    :param cutoff: The per-mode cutoff the matrix was evaluated at, None for
        closed forms.
    """

    point: object
    component: str
    matrix: np.ndarray
    source: str = "numeric"
    cutoff: Optional[int] = None


@dataclass(frozen=True, eq=False)
class FieldStrengthSample:
    point: object
    components: tuple
    matrix: np.ndarray
    source: str = "analytic"


def control_unitary(point):
    """
    The full-space unitary U(σ) of the point's chart.
    """
    return point.chart.unitary_from_values(point.values)


def _block_columns(chart, values):
    indices = chart.block.indices(chart.space)
    return chart.unitary_from_values(values).matrix[:, indices]


def _shifted(values, index, amount):
    shifted = np.array(values, dtype=float)
    shifted[index] += amount
    return shifted


def _numeric_derivative(chart, values, index, step, stencil):
    if stencil == "central":
        forward = _block_columns(chart, _shifted(values, index, step))
        backward = _block_columns(chart, _shifted(values, index, -step))
        return (forward - backward) / (2 * step)
    if stencil == "five_point":
        terms = [
            (-1.0, 2 * step),
            (8.0, step),
            (-8.0, -step),
            (1.0, -2 * step),
        ]
        total = sum(
            weight * _block_columns(chart, _shifted(values, index, amount))
            for weight, amount in terms
        )
        return total / (12 * step)
    raise ValueError(f"Unknown stencil {stencil!r}, expected central or five_point")


class Connection:
    """
    Evaluates connection components of a chart at raw coordinate arrays.

    Raw arrays may leave the chart's domain (negative radii, unwrapped
    angles), which is what finite differences and loop sampling need.

    :param chart: The ControlChart.
    :param source: "analytic" or "numeric".
    :param step: Finite-difference step of the numeric source.
    :param convention: ConventionMap for the analytic source, defaults to
        the ledger entry of the chart.
    """

    def __init__(
        self,
        chart,
        source="analytic",
        step=DEFAULT_STEP,
        convention=None,
        stencil="central",
    ):
        if source not in SOURCES:
            raise ValueError(
                f"Unknown connection source {source!r}, expected {SOURCES}"
            )
        self.chart = chart
        self.source = source
        self.step = step
        self.stencil = stencil
        if convention is None:
            convention = CONNECTION_CONVENTIONS[chart.kind]
        self.convention = convention

    @property
    def outer_step(self):
        if self.source == "analytic":
            return ANALYTIC_OUTER_STEP
        return NUMERIC_OUTER_STEP

    def components(self, values, names):
        """
        :returns: Dict from component name to its d×d matrix.
        """
        self.chart.check_values(values)
        for name in names:
            self.chart.index(name)
        if self.source == "analytic":
            return {
                name: self.convention.apply(self.chart, values, name) for name in names
            }
        adjoint = _block_columns(self.chart, values).conj().T
        return {
            name: adjoint
            @ _numeric_derivative(
                self.chart, values, self.chart.index(name), self.step, self.stencil
            )
            for name in names
        }

    def __call__(self, values, component):
        return self.components(values, [component])[component]

    def curvature(self, values, first, second, commutator_sign=1, step=None):
        """
        ∂_first A_second - ∂_second A_first + commutator_sign [A_first, A_second]
        with central differences of the given step.
        """
        if first == second:
            return np.zeros((self.chart.block.dim,) * 2, dtype=complex)
        step = self.outer_step if step is None else step
        i = self.chart.index(first)
        j = self.chart.index(second)
        d_second = (
            self(_shifted(values, i, step), second)
            - self(_shifted(values, i, -step), second)
        ) / (2 * step)
        d_first = (
            self(_shifted(values, j, step), first)
            - self(_shifted(values, j, -step), first)
        ) / (2 * step)
        center = self.components(values, [first, second])
        return (d_second - d_first) + commutator_sign * commutator(
            center[first], center[second]
        )


def connection_numeric(
    point,
    component,
    step=DEFAULT_STEP,
    check_truncation=False,
    tolerance=TRUNCATION_TOLERANCE,
    stencil="central",
    max_cutoff=None,
):
    """
    Evaluates the connection definition by finite differences of U(σ).

    :param point: ControlPoint to evaluate at.
    :param component: Coordinate name.
    :param step: Finite-difference step h > 0.
    :param check_truncation: Keep doubling the cutoff until the component
        moves by at most tolerance, and return the value at the smallest
        cutoff that survives doubling.
    :param tolerance: Largest accepted entry change under cutoff doubling.
    :param stencil: "central" (second order) or "five_point" (fourth order).
    :param max_cutoff: Largest cutoff the doubling may reach, four times the
        chart's cutoff by default.
    :raises TruncationConvergenceError: If no doubling up to max_cutoff is
        stable.
    """
    if step <= 0:
        raise ValueError(f"Finite-difference step must be positive, got {step}")
    chart = point.chart
    matrix = Connection(chart, "numeric", step, stencil=stencil)(
        point.values, component
    )
    if not check_truncation:
        return ConnectionSample(point, component, matrix, "numeric", chart.cutoff)
    if max_cutoff is None:
        max_cutoff = 4 * chart.cutoff
    if max_cutoff < 2 * chart.cutoff:
        raise ValueError(
            f"max_cutoff={max_cutoff} leaves no room to double {chart.cutoff}"
        )
    current = chart
    change = math.inf
    while change > tolerance:
        if 2 * current.cutoff > max_cutoff:
            raise TruncationConvergenceError(
                f"A_{component} at {point} changed by {change:.3e} when the cutoff"
                f" was doubled to {current.cutoff}, starting from {chart.cutoff}"
            )
        doubled = current.with_cutoff(2 * current.cutoff)
        refined = Connection(doubled, "numeric", step, stencil=stencil)(
            point.values, component
        )
        change = float(np.max(np.abs(refined - matrix)))
        logger.debug(
            "Cutoff doubling %d -> %d moved A_%s by %.3e",
            current.cutoff,
            doubled.cutoff,
            component,
            change,
        )
        if change > tolerance:
            current, matrix = doubled, refined
    return ConnectionSample(point, component, matrix, "numeric", current.cutoff)


def edge_weight(point):
    """
    The norm of U(σ) applied to the code block on basis states where some
    mode sits at the top kept level, a cheap indicator of truncation.
    """
    chart = point.chart
    space = chart.space
    edge = np.array(
        [max(space.occupations(k)) == space.cutoff - 1 for k in range(space.total_dim)]
    )
    return float(np.linalg.norm(_block_columns(chart, point.values)[edge]))


def richardson_estimate(point, component, step=DEFAULT_STEP):
    """
    Combines central differences at h and h/2 into a fourth-order estimate,
    (4 A(h/2) - A(h)) / 3.
    """
    coarse = connection_numeric(point, component, step).matrix
    fine = connection_numeric(point, component, step / 2).matrix
    return ConnectionSample(
        point, component, (4 * fine - coarse) / 3, "numeric", point.chart.cutoff
    )


def connection_analytic(point, component, convention=None):
    """
    The closed-form connection component with the convention map applied.

    :raises UnsupportedComponentError: For components without a closed form.
    """
    connection = Connection(point.chart, "analytic", convention=convention)
    return ConnectionSample(
        point, component, connection(point.values, component), "analytic"
    )


def field_strength(point, first, second, source="analytic", step=None):
    """
    F = ∂_first A_second - ∂_second A_first + [A_first, A_second], with the
    derivative terms by central differences of the chosen source.
    """
    connection = Connection(point.chart, source)
    matrix = connection.curvature(point.values, first, second, step=step)
    return FieldStrengthSample(point, (first, second), matrix, source)


def commutator_norm(point, first, second, source="analytic"):
    """
    ‖[A_first, A_second]‖_max at the point.
    """
    connection = Connection(point.chart, source)
    matrices = connection.components(point.values, [first, second])
    return float(np.max(np.abs(commutator(matrices[first], matrices[second]))))


def hermiticity_defect(sample):
    """
    ‖A + A†‖_max of a connection or field strength sample.
    """
    matrix = sample.matrix if hasattr(sample, "matrix") else np.asarray(sample)
    return float(np.max(np.abs(matrix + matrix.conj().T)))


def probe_values(chart, rng):
    """
    A pseudo-random coordinate tuple inside the truncation-safe probe ranges.
    """
    return tuple(
        float(rng.uniform(*PROBE_RANGES[name])) for name in chart.coordinate_names
    )


def probe_points(chart, count, seed=0):
    rng = np.random.default_rng(seed)
    names = chart.coordinate_names
    return [
        chart.point(**dict(zip(names, probe_values(chart, rng))))
        for _ in range(count)
    ]


@dataclass(frozen=True)
class CalibrationResult:
    """
    :param convention: The selected ConventionMap.
    :param residual: Its largest elementwise deviation over probes.
    :param candidates: Tuple of (ConventionMap, residual) for every
        candidate tried, in trial order.
    :param agrees_with_ledger: Whether the selection equals the frozen entry.
    """

    convention: ConventionMap
    residual: float
    candidates: tuple = field(default_factory=tuple)
    agrees_with_ledger: bool = True


def calibrate_connection(chart, n_probes=5, seed=0, step=DEFAULT_STEP, margin=1e-9):
    """
    Fits the convention map between the published closed forms and the
    numerical connection at seeded probe points.

    Candidates run over the transpose flag (off first) and over sign flips
    of the non-radial coordinates (no flips first). For each candidate a
    component is negated only if that lowers its residual by more than
    margin. The first candidate within margin of the smallest residual is
    selected.
    """
    rng = np.random.default_rng(seed)
    probes = [probe_values(chart, rng) for _ in range(n_probes)]
    components = chart.closed_form_components
    numeric = Connection(chart, "numeric", step)
    measured = [numeric.components(values, components) for values in probes]
    sign_names = [
        n for n in chart.coordinate_names if n not in chart.radial_coordinates
    ]

    candidates = []
    for transpose in (False, True):
        for signs in itertools.product((1, -1), repeat=len(sign_names)):
            coordinate_signs = dict(zip(sign_names, signs))
            base = ConventionMap(coordinate_signs, {}, transpose)
            component_signs = {}
            residual = 0.0
            for component in components:
                plus = 0.0
                minus = 0.0
                for values, matrices in zip(probes, measured):
                    published = base.apply(chart, values, component)
                    target = matrices[component]
                    plus = max(plus, float(np.max(np.abs(target - published))))
                    minus = max(minus, float(np.max(np.abs(target + published))))
                if minus < plus - margin:
                    component_signs[component] = -1
                    plus = minus
                residual = max(residual, plus)
            convention = ConventionMap(coordinate_signs, component_signs, transpose)
            logger.debug(
                "%s candidate %s residual %.3e",
                chart.kind.display_name,
                convention.as_dict(),
                residual,
            )
            candidates.append((convention, residual))

    best = min(residual for _, residual in candidates)
    convention, residual = next(
        (c, r) for c, r in candidates if r <= best + margin
    )
    agrees = convention.same_as(
        CONNECTION_CONVENTIONS[chart.kind], chart.coordinate_names
    )
    logger.info(
        "%s convention %s, residual %.3e, agrees with ledger: %s",
        chart.kind.display_name,
        convention.as_dict(),
        residual,
        agrees,
    )
    if not agrees:
        logger.warning(
            "Fitted convention for %s differs from the ledger", chart.kind.display_name
        )
    return CalibrationResult(convention, residual, tuple(candidates), agrees)

