"""
The kick method: an adiabatic displacement loop around a Kerr medium,
discretized as an ordered product of conjugated short-time evolutions

    U(0, T) ≈ ∏_k D(p_k) exp(-i H₀ Δt) D†(p_k),

with the first kick rightmost. The displacements p_k run over the vertices
of a regular polygon inscribed in the loop.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from _holokerr.conventions import (
    KICK_CONVENTION,
    REFERENCE_DEVIATIONS,
    REFERENCE_M,
    REFERENCE_M_VALUES,
    KickConvention,
    KickCount,
    VertexOffset,
)
from _holokerr.fock_core import (
    CodeBlock,
    FockSpace,
    Operator,
    project_block,
    warn_truncation,
)
from _holokerr.optics_ops import (
    KerrConfig,
    coherent_edge_population,
    displacer,
    kerr_energies,
)

logger = logging.getLogger(__name__)

ENTRY_LABELS = ("00", "01", "10", "11")
ENTRY_INDICES = ((0, 0), (0, 1), (1, 0), (1, 1))
VANISHING_REFERENCE = 1e-12
TABLE_TOLERANCE = 0.25
DEFAULT_CUTOFF = 32


class KickScheduleError(Exception):
    """
    Raised for an invalid kick schedule or polygon, or a deviation table
    whose reference is smaller than one of its columns.
    """

    pass


@dataclass(frozen=True)
class PolygonLoop:
    """
    A regular m-gon in the λ-plane, vertices λ_k = center + radius
    e^{i(offset + 2πk/m)}.

    :param start_at_origin: Translate the polygon so that the first kick is
        applied at λ = 0, i.e. displacements are taken relative to λ₁.
    """

    m: int
    radius: float = 1.0
    center: complex = 0j
    start_at_origin: bool = True
    offset: float = 0.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 3:
            raise KickScheduleError(
                f"A polygon needs at least 3 vertices, got {self.m}"
            )
        if self.radius < 0:
            raise ValueError(f"Polygon radius must be non-negative, got {self.radius}")
        object.__setattr__(self, "center", complex(self.center))

    @classmethod
    def from_convention(cls, m, convention, radius=1.0, center=0j):
        return cls(
            m,
            radius,
            center,
            convention.start_at_origin,
            convention.vertex_offset.angle(m),
        )

    @property
    def vertices(self):
        angles = self.offset + 2 * np.pi * np.arange(self.m) / self.m
        return self.center + self.radius * np.exp(1j * angles)

    def positions(self, kick_count):
        """
        The displacement of every kick, in application order. The m+1 kick
        convention closes the loop with a final kick back at the first
        vertex.
        """
        vertices = self.vertices
        if kick_count == KickCount.M_PLUS_ONE_KICKS:
            vertices = np.append(vertices, vertices[0])
        if self.start_at_origin:
            return vertices - vertices[0]
        return vertices


@dataclass(frozen=True)
class KickSchedule:
    """
    :param total_time: T > 0.
    :param coupling: The Kerr coupling X.
    :param kick_count: m or m+1 kicks per polygon of m vertices.
    """

    total_time: float = 0.1
    coupling: float = 1.0
    kick_count: KickCount = KICK_CONVENTION.kick_count

    def __post_init__(self):
        if not self.total_time > 0:
            raise KickScheduleError(
                f"Total time must be positive, got {self.total_time}"
            )
        KerrConfig(self.coupling)

    def n_kicks(self, m):
        if self.kick_count == KickCount.M_PLUS_ONE_KICKS:
            return m + 1
        return m

    def dt(self, m):
        return self.total_time / self.n_kicks(m)


def kicked_evolution(polygon, schedule, space):
    """
    The kicked evolution of one polygon loop on a single-mode FockSpace.

    :returns: The full-space unitary Operator.
    """
    if space.n_modes != 1:
        raise KickScheduleError(f"Kicks act on a single mode, got {space.n_modes}")
    reach = polygon.radius + abs(polygon.center)
    if polygon.start_at_origin:
        reach = 2 * polygon.radius
    if reach > space.cutoff / 4:
        warn_truncation(
            f"Kick loop reaching |λ|={reach:.3f}",
            coherent_edge_population(reach, space.cutoff),
        )
    dt = schedule.dt(polygon.m)
    free = np.exp(-1j * kerr_energies(space, schedule.coupling) * dt)
    evolution = np.eye(space.total_dim, dtype=complex)
    for position in polygon.positions(schedule.kick_count):
        displace = displacer(space, 0, position).matrix
        kick = (displace * free) @ displace.conj().T
        evolution = kick @ evolution
    return Operator(space, evolution)


def logical_block(polygon, schedule, cutoff=DEFAULT_CUTOFF):
    space = FockSpace(1, cutoff)
    evolution = kicked_evolution(polygon, schedule, space)
    return project_block(evolution, CodeBlock.kerr_ground(1))


@dataclass(frozen=True, eq=False)
class DeviationReport:
    """
    Percent deviations of |U_ab| for each m against the reference m.

    :param magnitudes: Array (4, len(m_values)) of |U_ab(m)|, rows in the
        order 00, 01, 10, 11.
    :param reference: Array (4,) of |U_ab(reference_m)|.
    :param deviations: Array (4, len(m_values)), NaN where flagged.
    :param flagged: Entries whose reference magnitude vanishes.
    """

    m_values: tuple
    reference_m: int
    magnitudes: np.ndarray
    reference: np.ndarray
    deviations: np.ndarray
    flagged: tuple = field(default_factory=tuple)

    @property
    def symmetry_defect(self):
        """
        Largest |deviation_01 - deviation_10| over the table.
        """
        return float(np.nanmax(np.abs(self.deviations[1] - self.deviations[2])))

    def rows(self, digits=4):
        """
        Table rows {entry, m..., reference} with percentages rounded.
        """
        result = []
        for row, label in enumerate(ENTRY_LABELS):
            line = {"entry": label}
            for column, m in enumerate(self.m_values):
                value = self.deviations[row, column]
                if math.isnan(value):
                    line[f"m={m}"] = "flagged"
                else:
                    line[f"m={m}"] = round(float(value), digits)
            line[f"|U|(m={self.reference_m})"] = float(self.reference[row])
            result.append(line)
        return result


def _with_kick_count(schedule, convention):
    return KickSchedule(schedule.total_time, schedule.coupling, convention.kick_count)


def _magnitudes(block):
    return np.array([abs(block[i, j]) for i, j in ENTRY_INDICES])


def deviation_table(
    m_values,
    reference_m,
    schedule,
    convention=None,
    radius=1.0,
    center=0j,
    cutoff=DEFAULT_CUTOFF,
):
    """
    100 · ||U_ab(m)| - |U_ab(ref)|| / |U_ab(ref)| for each m and entry.

    :param convention: KickConvention, defaults to the ledger start and
        offset with the schedule's kick count.
    :raises KickScheduleError: If reference_m is smaller than some m.
    """
    m_values = tuple(int(m) for m in m_values)
    if m_values and reference_m < max(m_values):
        raise KickScheduleError(
            f"Reference m={reference_m} is smaller than m={max(m_values)}"
        )
    if convention is None:
        convention = KickConvention(
            schedule.kick_count,
            KICK_CONVENTION.start_at_origin,
            KICK_CONVENTION.vertex_offset,
        )
    schedule = _with_kick_count(schedule, convention)

    def block(m):
        polygon = PolygonLoop.from_convention(m, convention, radius, center)
        return logical_block(polygon, schedule, cutoff)

    reference = _magnitudes(block(reference_m))
    magnitudes = np.array([_magnitudes(block(m)) for m in m_values]).T.reshape(
        4, len(m_values)
    )
    deviations = np.full_like(magnitudes, np.nan)
    flagged = []
    for row, label in enumerate(ENTRY_LABELS):
        if reference[row] < VANISHING_REFERENCE:
            flagged.append(label)
            logger.warning("Reference |U_%s| vanishes, entry flagged", label)
            continue
        change = np.abs(magnitudes[row] - reference[row])
        deviations[row] = 100 * change / reference[row]
    logger.debug("Deviation table for %s: %s", convention.as_dict(), deviations)
    return DeviationReport(
        m_values, reference_m, magnitudes, reference, deviations, tuple(flagged)
    )


def convergence_order(
    m_values,
    reference_m,
    schedule,
    convention=KICK_CONVENTION,
    radius=1.0,
    cutoff=DEFAULT_CUTOFF,
):
    """
    The log-log slope of the logical-block error max|U(m) - U(ref)| against m,
    by least squares.
    """
    schedule = _with_kick_count(schedule, convention)

    def block(m):
        polygon = PolygonLoop.from_convention(m, convention, radius)
        return logical_block(polygon, schedule, cutoff)

    reference = block(reference_m)
    errors = [float(np.max(np.abs(block(m) - reference))) for m in m_values]
    slope, _ = np.polyfit(np.log(m_values), np.log(errors), 1)
    return float(slope), errors


@dataclass(frozen=True)
class ConventionScore:
    convention: KickConvention
    total_relative_error: float
    max_relative_error: float
    symmetry_defect: float
    ratio_5_10: float
    order: float = float("nan")


@dataclass(frozen=True)
class ConventionCalibration:
    selected: ConventionScore
    scores: tuple
    agrees_with_ledger: bool

    @property
    def within_tolerance(self):
        return self.selected.max_relative_error <= TABLE_TOLERANCE


def _candidate_conventions():
    candidates = [KICK_CONVENTION]
    for kick_count, start_at_origin, offset in itertools.product(
        KickCount, (True, False), VertexOffset
    ):
        convention = KickConvention(kick_count, start_at_origin, offset)
        if convention != KICK_CONVENTION:
            candidates.append(convention)
    return candidates


def convention_calibration(
    schedule=None,
    radius=1.0,
    cutoff=DEFAULT_CUTOFF,
    with_order=False,
    order_m_values=(5, 10, 20, 40, 80),
    order_reference_m=400,
    margin=1e-9,
):
    """
    Runs the deviation table under every combination of kick count, start
    convention and vertex offset, and selects the one closest to the
    reference table in total relative error.

    The ledger convention is tried first, and the first candidate within
    margin (relative) of the smallest total is selected. With a start at
    the origin the vertex offset only rotates the loop, so those pairs tie.

    :param with_order: Also fit the convergence order of every candidate.
    """
    schedule = schedule or KickSchedule()
    scores = []
    for convention in _candidate_conventions():
        report = deviation_table(
            REFERENCE_M_VALUES, REFERENCE_M, schedule, convention, radius, cutoff=cutoff
        )
        mismatch = np.abs(report.deviations - REFERENCE_DEVIATIONS)
        relative = mismatch / REFERENCE_DEVIATIONS
        order = float("nan")
        if with_order:
            order, _ = convergence_order(
                order_m_values, order_reference_m, schedule, convention, radius, cutoff
            )
        score = ConventionScore(
            convention,
            float(np.nansum(relative)),
            float(np.nanmax(relative)),
            report.symmetry_defect,
            float(report.deviations[0, 0] / report.deviations[0, 1]),
            order,
        )
        logger.info(
            "Kick convention %s: total relative error %.4f, max %.4f, order %.3f",
            convention.as_dict(),
            score.total_relative_error,
            score.max_relative_error,
            score.order,
        )
        scores.append(score)
    best = min(s.total_relative_error for s in scores)
    selected = next(
        s for s in scores if s.total_relative_error <= best * (1 + margin)
    )
    agrees = selected.convention == KICK_CONVENTION
    if not agrees:
        logger.warning(
            "Fitted kick convention %s differs from the ledger",
            selected.convention.as_dict(),
        )
    return ConventionCalibration(selected, tuple(scores), agrees)
