"""
Holonomies Γ_A(C) of the control-chart connections, by three routes:

* path-ordered products of short-segment exponentials along a LoopPath,
* exponentials of abelianized surface integrals Σ over planar rectangles
  on which the two connection components commute,
* the non-Abelian Stokes theorem, a τ-ordered surface integral of the
  transported curvature over an axis-aligned rectangle.

Path ordering puts the last segment leftmost, Γ = exp(A_n Δσ_n) ⋯
exp(A_1 Δσ_1), so Γ solves dΓ = A Γ along the loop. Loops that run
counterclockwise in the (first, second) coordinate plane have positive
orientation.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum, unique
from typing import Callable

import numpy as np
from scipy.linalg import expm

from _holokerr.charts import ChartKind, ControlPoint, SU2Chart, make_chart
from _holokerr.control_charts import Connection, field_strength
from _holokerr.conventions import (
    GENERATOR_LABELS,
    GENERATORS,
    PRINTED_GENERATOR_LABELS,
    SU2_RECT_ORIENTATION,
    generator,
)
from _holokerr.quadrature import (
    DEFAULT_ORDER,
    gauss_legendre,
    integrate_1d,
    integrate_2d,
)

logger = logging.getLogger(__name__)

DEFAULT_STEPS_PER_EDGE = 200
DEFAULT_STOKES_SLICES = 128
DEFAULT_SUBSTEPS = 4
CLOSURE_TOLERANCE = 1e-12
TWO_PI = 2 * math.pi


class LoopError(Exception):
    """
    Raised for open loops, degenerate or mismatched regions, and loops that
    are not axis-aligned rectangles where one is required.
    """

    pass


@unique
class Route(Enum):
    PATH_ORDERED = "path-ordered"
    SURFACE = "surface"
    STOKES = "stokes"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True, eq=False)
class Holonomy:
    """
    A holonomy on a chart's code block, tagged with the route that produced
    it.
    """

    matrix: np.ndarray
    route: Route

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self):
        return len(self.matrix)

    @property
    def unitarity_defect(self):
        product = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(product - np.eye(self.dim))))

    def phases(self):
        return tuple(float(p) for p in np.angle(np.diag(self.matrix)))

    def inverse(self):
        return Holonomy(np.linalg.inv(self.matrix), self.route)

    def distance(self, other):
        other = other.matrix if isinstance(other, Holonomy) else np.asarray(other)
        return float(np.max(np.abs(self.matrix - other)))


def _angle_difference(first, second):
    return abs(math.remainder(first - second, TWO_PI))


def _same_values(chart, first, second, tolerance=CLOSURE_TOLERANCE):
    for name, a, b in zip(chart.coordinate_names, first, second):
        if name in chart.periodic_coordinates:
            if _angle_difference(a, b) > tolerance:
                return False
        elif abs(a - b) > tolerance:
            return False
    return True


def _base_point(chart, base):
    if base is None:
        return chart.origin()
    if isinstance(base, ControlPoint):
        return base
    return chart.point(**base)


@dataclass(frozen=True, eq=False)
class LoopPath:
    """
    A piecewise-linear path through the control points, each edge sampled
    with steps_per_edge segments.

    :param chart: The ControlChart the vertices belong to.
    :param vertices: Tuple of ControlPoints.
    :param steps_per_edge: Number of midpoint segments per edge.
    :param closed: Whether the path is a loop; closed loops must end where
        they start, periodic coordinates compared modulo 2π.
    """

    chart: object
    vertices: tuple
    steps_per_edge: int = DEFAULT_STEPS_PER_EDGE
    closed: bool = True

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if not vertices:
            raise LoopError("A loop needs at least one vertex")
        if self.steps_per_edge < 1:
            raise LoopError(
                f"steps_per_edge must be at least 1, got {self.steps_per_edge}"
            )
        for vertex in vertices:
            if vertex.chart is not self.chart:
                raise LoopError(f"Vertex {vertex} does not belong to {self.chart}")
        if self.closed and not _same_values(
            self.chart, vertices[0].values, vertices[-1].values
        ):
            raise LoopError(
                f"Closed loop ends at {vertices[-1]} instead of {vertices[0]}"
            )
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def rectangle(
        cls,
        chart,
        plane,
        bounds,
        base=None,
        steps_per_edge=DEFAULT_STEPS_PER_EDGE,
        orientation=1,
    ):
        """
        The boundary of bounds = ((a1, b1), (a2, b2)) in the plane, starting
        at (a1, a2), counterclockwise for orientation +1.
        """
        (a1, b1), (a2, b2) = bounds
        corners = [(a1, a2), (b1, a2), (b1, b2), (a1, b2)]
        if orientation < 0:
            corners = [corners[0]] + corners[:0:-1]
        return cls.polygon(chart, plane, corners, base, steps_per_edge)

    @classmethod
    def polygon(cls, chart, plane, points, base=None, steps_per_edge=1):
        """
        A closed polygon through the given (first, second) coordinate pairs,
        other coordinates taken from base.
        """
        first, second = plane
        base = _base_point(chart, base)
        vertices = [base.replace(**{first: p, second: q}) for p, q in points]
        vertices.append(vertices[0])
        return cls(chart, tuple(vertices), steps_per_edge)

    @classmethod
    def circle(
        cls, chart, plane, center, radius, n_vertices=256, base=None, steps_per_edge=2
    ):
        """
        A counterclockwise regular polygon with n_vertices inscribed in the
        circle, starting at angle 0.
        """
        angles = TWO_PI * np.arange(n_vertices) / n_vertices
        points = [
            (center[0] + radius * math.cos(a), center[1] + radius * math.sin(a))
            for a in angles
        ]
        return cls.polygon(chart, plane, points, base, steps_per_edge)

    @classmethod
    def sweep(
        cls, chart, coordinate, base=None, steps_per_edge=DEFAULT_STEPS_PER_EDGE
    ):
        """
        One full positive turn of a periodic coordinate, all other
        coordinates held at base.
        """
        if coordinate not in chart.periodic_coordinates:
            raise LoopError(f"{coordinate} is not a periodic coordinate of {chart}")
        base = _base_point(chart, base)
        end = base.replace(**{coordinate: base[coordinate] + TWO_PI})
        return cls(chart, (base, end), steps_per_edge)

    def reversed(self):
        return LoopPath(
            self.chart, self.vertices[::-1], self.steps_per_edge, self.closed
        )

    def with_steps(self, steps_per_edge):
        return LoopPath(self.chart, self.vertices, steps_per_edge, self.closed)

    def edges(self):
        return [
            (start.as_array(), end.as_array())
            for start, end in zip(self.vertices, self.vertices[1:])
        ]

    def varying_coordinates(self):
        values = np.array([v.values for v in self.vertices])
        return tuple(
            name
            for index, name in enumerate(self.chart.coordinate_names)
            if np.ptp(values[:, index]) > 0
        )


def _block_identity(chart):
    return np.eye(chart.block.dim, dtype=complex)


def path_ordered_holonomy(loop, source="analytic", connection=None):
    """
    The ordered product of exp(Σ_i A_i(midpoint) Δσ_i) over the segments of
    a closed loop, last segment leftmost.

    :param loop: A closed LoopPath.
    :param source: "analytic" or "numeric" connection.
    :param connection: Optional prepared Connection, overrides source.
    :raises LoopError: If the loop is not closed.
    """
    if not loop.closed:
        raise LoopError("Path-ordered holonomy requires a closed loop")
    chart = loop.chart
    connection = connection or Connection(chart, source)
    names = chart.coordinate_names
    gamma = _block_identity(chart)
    for start, end in loop.edges():
        delta = end - start
        active = [name for name, d in zip(names, delta) if d != 0]
        if not active:
            continue
        increment = delta / loop.steps_per_edge
        for k in range(loop.steps_per_edge):
            midpoint = start + (k + 0.5) * increment
            matrices = connection.components(midpoint, active)
            exponent = sum(
                matrices[name] * increment[chart.index(name)] for name in active
            )
            gamma = expm(exponent) @ gamma
    holonomy = Holonomy(gamma, Route.PATH_ORDERED)
    logger.debug(
        "Path-ordered holonomy over %d edges, unitarity defect %.3e",
        len(loop.vertices) - 1,
        holonomy.unitarity_defect,
    )
    return holonomy


def converged_holonomy(
    loop, source="analytic", tolerance=1e-6, max_doublings=4, connection=None
):
    """
    Doubles steps_per_edge until the path-ordered holonomy moves by less than
    tolerance. Gives up after max_doublings and returns the last estimate.
    """
    connection = connection or Connection(loop.chart, source)
    previous = path_ordered_holonomy(loop, connection=connection)
    for _ in range(max_doublings):
        loop = loop.with_steps(2 * loop.steps_per_edge)
        current = path_ordered_holonomy(loop, connection=connection)
        change = current.distance(previous)
        logger.debug("steps_per_edge=%d changed by %.3e", loop.steps_per_edge, change)
        if change < tolerance:
            return current
        previous = current
    logger.warning(
        "Path-ordered holonomy not converged to %.1e at %d steps per edge",
        tolerance,
        loop.steps_per_edge,
    )
    return previous


@dataclass(frozen=True, eq=False)
class PlanarRegion:
    """
    The rectangle bounds = ((a1, b1), (a2, b2)) in the plane of two chart
    coordinates, with the remaining coordinates frozen.

    :param orientation: +1 for the counterclockwise boundary, -1 for the
        clockwise one. Surface integrals carry the sign.
    """

    chart: object
    plane: tuple
    bounds: tuple
    frozen: dict = field(default_factory=dict)
    quadrature_order: int = DEFAULT_ORDER
    orientation: int = 1

    def __post_init__(self):
        first, second = self.plane
        self.chart.index(first)
        self.chart.index(second)
        if first == second:
            raise LoopError(f"Plane coordinates must be distinct, got {self.plane}")
        for name in self.frozen:
            self.chart.index(name)
            if name in self.plane:
                raise LoopError(f"Coordinate {name} is both frozen and in the plane")
        bounds = tuple((float(low), float(high)) for low, high in self.bounds)
        for low, high in bounds:
            if not (math.isfinite(low) and math.isfinite(high)) or high < low:
                raise LoopError(f"Degenerate region bounds {self.bounds}")
        if self.orientation not in (1, -1):
            raise ValueError(f"orientation must be +1 or -1, got {self.orientation}")
        object.__setattr__(self, "plane", (first, second))
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "frozen", dict(self.frozen))

    @property
    def area(self):
        (a1, b1), (a2, b2) = self.bounds
        return (b1 - a1) * (b2 - a2)

    def base_point(self):
        (a1, _), (a2, _) = self.bounds
        return self.chart.point(**self.frozen, **{self.plane[0]: a1, self.plane[1]: a2})

    def boundary(self, steps_per_edge=DEFAULT_STEPS_PER_EDGE):
        return LoopPath.rectangle(
            self.chart,
            self.plane,
            self.bounds,
            self.base_point(),
            steps_per_edge,
            self.orientation,
        )

    def reversed(self):
        return PlanarRegion(
            self.chart,
            self.plane,
            self.bounds,
            self.frozen,
            self.quadrature_order,
            -self.orientation,
        )

    @classmethod
    def from_loop(cls, loop):
        """
        Recognizes a closed four-edge axis-aligned rectangle.

        :raises LoopError: For any other loop.
        """
        chart = loop.chart
        varying = loop.varying_coordinates()
        if not loop.closed or len(loop.vertices) != 5 or len(varying) != 2:
            raise LoopError("Expected an axis-aligned rectangle with four edges")
        indices = [chart.index(name) for name in varying]
        corners = [v.as_array()[indices] for v in loop.vertices[:4]]
        for start, end in zip(corners, corners[1:] + corners[:1]):
            if np.count_nonzero(end - start) != 1:
                raise LoopError("Rectangle edges must each move one coordinate")
        for axis in range(2):
            if len({float(c[axis]) for c in corners}) != 2:
                raise LoopError("Rectangle corners do not span two values per axis")
        signed_area = 0.5 * sum(
            a[0] * b[1] - b[0] * a[1]
            for a, b in zip(corners, corners[1:] + corners[:1])
        )
        bounds = tuple(
            (min(c[axis] for c in corners), max(c[axis] for c in corners))
            for axis in range(2)
        )
        if not np.allclose(corners[0], [b[0] for b in bounds]):
            raise LoopError("Stokes route needs the loop to start at the lower corner")
        frozen = {
            name: value
            for name, value in loop.vertices[0].as_dict().items()
            if name not in varying
        }
        return cls(
            chart, varying, bounds, frozen, orientation=1 if signed_area > 0 else -1
        )


@dataclass(frozen=True)
class SurfaceFamily:
    """
    One of the five planes on which the connection components commute, with
    the density whose surface integral Σ gives Γ = exp(-i G Σ).
    """

    which: str
    chart_kind: ChartKind
    plane: tuple
    frozen: dict
    density: Callable
    integral: Callable


def _sigma_i(bounds):
    (a1, b1), (a2, b2) = bounds
    return (b1 - a1) * (math.exp(-2 * a2) - math.exp(-2 * b2))


def _sigma_ii(bounds):
    (a1, b1), (a2, b2) = bounds
    return (b1 - a1) * (math.exp(2 * b2) - math.exp(2 * a2))


def _sigma_iii(bounds):
    (a1, b1), (a2, b2) = bounds
    return (b2 - a2) * (math.cosh(4 * b1) - math.cosh(4 * a1)) / 4


def _sigma_two_mode(bounds):
    (a1, b1), (a2, b2) = bounds
    return (b2 - a2) * (math.cosh(2 * b1) - math.cosh(2 * a1))


SURFACE_FAMILIES = {
    "I": SurfaceFamily(
        "I",
        ChartKind.SINGLE_MODE_DS,
        ("x", "r1"),
        {"theta1": 0.0},
        lambda x, r1: 2 * math.exp(-2 * r1),
        _sigma_i,
    ),
    "II": SurfaceFamily(
        "II",
        ChartKind.SINGLE_MODE_DS,
        ("y", "r1"),
        {"theta1": 0.0},
        lambda y, r1: 2 * math.exp(2 * r1),
        _sigma_ii,
    ),
    "III": SurfaceFamily(
        "III",
        ChartKind.SINGLE_MODE_DS,
        ("r1", "theta1"),
        {},
        lambda r1, theta1: math.sinh(4 * r1),
        _sigma_iii,
    ),
    "IV": SurfaceFamily(
        "IV",
        ChartKind.TWO_MODE_NM,
        ("r2", "r3"),
        {"theta2": 0.0, "theta3": 0.0},
        lambda r2, r3: 2 * math.sinh(2 * r2),
        _sigma_two_mode,
    ),
    "V": SurfaceFamily(
        "V",
        ChartKind.TWO_MODE_NM,
        ("r2", "r3"),
        {"theta2": 0.0, "theta3": 1.5 * math.pi},
        lambda r2, r3: 2 * math.sinh(2 * r2),
        _sigma_two_mode,
    ),
}


def surface_family(which):
    try:
        return SURFACE_FAMILIES[which]
    except KeyError as err:
        raise ValueError(
            f"Unknown surface family {which!r}, expected one of "
            f"{sorted(SURFACE_FAMILIES)}"
        ) from err


def _check_region(region, family):
    if region.chart.kind != family.chart_kind:
        raise LoopError(
            f"Σ_{family.which} lives on {family.chart_kind.display_name}, "
            f"got {region.chart.kind.display_name}"
        )
    if region.plane != family.plane:
        raise LoopError(
            f"Σ_{family.which} is taken over the {family.plane} plane, "
            f"got {region.plane}"
        )
    for name, required in family.frozen.items():
        value = region.frozen.get(name, 0.0)
        if _angle_difference(value, required) > CLOSURE_TOLERANCE:
            raise LoopError(
                f"Σ_{family.which} requires {name}={required:.6g}, got {value:.6g}"
            )


def surface_sigma(region, which, method="closed_form"):
    """
    The surface integral Σ_which over the region, signed by its orientation.

    :param method: "closed_form" (antiderivative over the rectangle) or
        "quadrature" (tensor Gauss-Legendre of the density).
    :raises LoopError: If the region is not in the family's plane or its
        frozen angles differ from the family's.
    """
    family = surface_family(which)
    _check_region(region, family)
    if method == "closed_form":
        value = family.integral(region.bounds)
    elif method == "quadrature":
        value = integrate_2d(family.density, region.bounds, region.quadrature_order)
    else:
        raise ValueError(f"Unknown method {method!r}, expected closed_form/quadrature")
    return region.orientation * float(value)


def holonomy_from_sigma(which, sigma):
    """
    Γ = exp(-i G Σ) with the reconciled generator of the family.
    """
    return Holonomy(expm(-1j * sigma * generator(which)), Route.SURFACE)


def surface_holonomy(region, which):
    return holonomy_from_sigma(which, surface_sigma(region, which))


@dataclass(frozen=True)
class ReconciledGenerator:
    which: str
    label: str
    printed_label: str
    residual: float
    matches_ledger: bool


DEFAULT_RECONCILE_PROBES = {
    "I": {"x": 0.1, "y": 0.2, "r1": 0.3},
    "II": {"x": 0.1, "y": 0.2, "r1": 0.3},
    "III": {"x": 0.1, "y": 0.2, "r1": 0.3, "theta1": 0.4},
    "IV": {"r2": 0.3, "r3": 0.5},
    "V": {"r2": 0.3, "r3": 0.5, "theta3": 1.5 * math.pi},
}


def reconcile_generator(which, chart=None, probe=None, source="numeric"):
    """
    Names the generator of Γ_which from the field strength at a probe point:
    F = -i G density, so G = i F / density is matched against the candidate
    generators of the right dimension.
    """
    family = surface_family(which)
    chart = chart or make_chart(family.chart_kind)
    coords = dict(DEFAULT_RECONCILE_PROBES[which] if probe is None else probe)
    coords.update(family.frozen)
    point = chart.point(**coords)
    first, second = family.plane
    strength = field_strength(point, first, second, source).matrix
    estimate = 1j * strength / family.density(point[first], point[second])
    candidates = {
        label: float(np.max(np.abs(estimate - matrix)))
        for label, matrix in GENERATORS.items()
        if matrix.shape == estimate.shape
    }
    label = min(candidates, key=candidates.get)
    result = ReconciledGenerator(
        which,
        label,
        PRINTED_GENERATOR_LABELS[which],
        candidates[label],
        label == GENERATOR_LABELS[which],
    )
    logger.info(
        "Γ_%s generator %s (printed %s), residual %.3e",
        which,
        label,
        result.printed_label,
        result.residual,
    )
    return result


def _transport(connection, values, index, start, stop, steps):
    """
    Midpoint transport along a single coordinate from start to stop.
    """
    name = connection.chart.coordinate_names[index]
    result = _block_identity(connection.chart)
    if stop == start:
        return result
    increment = (stop - start) / steps
    point = np.array(values, dtype=float)
    for k in range(steps):
        point[index] = start + (k + 0.5) * increment
        result = expm(connection(point, name) * increment) @ result
    return result


def _anti_hermitian_part(matrix):
    return 0.5 * (matrix - matrix.conj().T)


def stokes_holonomy(
    region,
    source="analytic",
    slices=DEFAULT_STOKES_SLICES,
    order=DEFAULT_ORDER,
    substeps=DEFAULT_SUBSTEPS,
    connection=None,
):
    """
    The holonomy of a rectangle's boundary as a τ-ordered surface integral,

        Γ = P_τ exp ∫ dτ ∫ dσ T⁻¹ F̃_{στ} T,

    with F̃ = ∂_σ A_τ - ∂_τ A_σ - [A_σ, A_τ] and T the transport from the
    base corner up the left edge to τ and then along τ to σ. The τ integral
    is split into slices, each advanced with a fourth-order Magnus step at
    two Gauss points; the σ integral uses Gauss-Legendre of the given order.

    :param region: A PlanarRegion, or a LoopPath that is an axis-aligned
        rectangle.
    :raises LoopError: If a LoopPath is not an axis-aligned rectangle.
    """
    if isinstance(region, LoopPath):
        region = PlanarRegion.from_loop(region)
    chart = region.chart
    if region.area == 0:
        return Holonomy(_block_identity(chart), Route.STOKES)
    connection = connection or Connection(chart, source)
    sigma_name, tau_name = region.plane
    s_index = chart.index(sigma_name)
    t_index = chart.index(tau_name)
    (s0, _), (t0, t1) = region.bounds
    base = region.base_point().as_array()
    nodes, weights = gauss_legendre(order, *region.bounds[0])

    def slice_density(tau, left):
        values = np.array(base)
        values[t_index] = tau
        horizontal = _block_identity(chart)
        position = s0
        total = np.zeros_like(horizontal)
        for node, weight in zip(nodes, weights):
            horizontal = (
                _transport(connection, values, s_index, position, node, substeps)
                @ horizontal
            )
            position = node
            values[s_index] = node
            curvature = connection.curvature(
                values, sigma_name, tau_name, commutator_sign=-1
            )
            transport = horizontal @ left
            total = total + weight * np.linalg.solve(transport, curvature @ transport)
        return total

    width = (t1 - t0) / slices
    offsets = (0.5 - math.sqrt(3) / 6, 0.5 + math.sqrt(3) / 6)
    left = _block_identity(chart)
    left_position = t0
    gamma = _block_identity(chart)
    for k in range(slices):
        densities = []
        for offset in offsets:
            tau = t0 + (k + offset) * width
            left = (
                _transport(connection, base, t_index, left_position, tau, substeps)
                @ left
            )
            left_position = tau
            densities.append(slice_density(tau, left))
        first, second = densities
        magnus = 0.5 * width * (first + second) + (math.sqrt(3) / 12) * width**2 * (
            second @ first - first @ second
        )
        gamma = expm(_anti_hermitian_part(magnus)) @ gamma
    if region.orientation < 0:
        gamma = gamma.conj().T
    logger.debug(
        "Stokes holonomy over %s with %d slices, order %d",
        region.bounds,
        slices,
        order,
    )
    return Holonomy(gamma, Route.STOKES)


SU2_RECT_PLANES = {
    "C1": (("alpha", "beta"), "sigma2_12"),
    "C2": (("alpha", "gamma"), "sigma3_12"),
}


def su2_rect_gate(kind, angle):
    """
    The closed-form interferometer gates exp(-2i angle σ̂₂¹²) for C1 and
    exp(-2i angle σ̂₃¹²) for C2 on {|00>, |01>, |10>, |11>}.
    """
    try:
        _, label = SU2_RECT_PLANES[kind]
    except KeyError as err:
        raise ValueError(f"Unknown rectangle {kind!r}, expected C1 or C2") from err
    return Holonomy(expm(-2j * angle * GENERATORS[label]), Route.CLOSED_FORM)


def su2_rect_region(kind, angle, chart=None, orientation=SU2_RECT_ORIENTATION):
    """
    The interferometer rectangle [0, π] × [0, angle] whose holonomy is
    su2_rect_gate(kind, angle). C1 lies in the (α, β) plane at γ = 0 and C2
    in the (α, γ) plane at β = 0.
    """
    if kind not in SU2_RECT_PLANES:
        raise ValueError(f"Unknown rectangle {kind!r}, expected C1 or C2")
    plane, _ = SU2_RECT_PLANES[kind]
    chart = chart or SU2Chart()
    if angle < 0:
        orientation = -orientation
    frozen = {name: 0.0 for name in chart.coordinate_names if name not in plane}
    return PlanarRegion(
        chart,
        plane,
        ((0.0, math.pi), (0.0, abs(angle))),
        frozen,
        orientation=orientation,
    )


def _line_integral(loop, integrand, order=16):
    """
    Σ over edges of ∫ integrand(values, delta) dt for t in [0, 1].
    """
    total = 0.0
    for start, end in loop.edges():
        delta = end - start

        def along(t, start=start, delta=delta):
            return integrand(start + t * delta, delta)

        total += integrate_1d(along, 0.0, 1.0, order)
    return total


def _require_plane(loop, allowed, kinds):
    if loop.chart.kind not in kinds:
        raise LoopError(
            f"Loop lives on {loop.chart.kind.display_name}, expected one of "
            f"{[k.display_name for k in kinds]}"
        )
    if not loop.closed:
        raise LoopError("Berry phases need a closed loop")
    extra = set(loop.varying_coordinates()) - set(allowed)
    if extra:
        raise LoopError(f"Loop must stay in the {allowed} plane, also varies {extra}")


def berry_phase_squeeze(loop, level, differential="theta1"):
    """
    φ_n = ((2n + 1)/4) ∮ (cosh 4r₁ - 1) dθ₁ for a loop in the (r1, θ1)
    plane, the phase of the (n, n) entry of its holonomy.

    :param level: Fock level n, 0 or 1.
    :param differential: "theta1", or "r1" for the literal ∮ (cosh 4r₁ - 1)
        dr₁, which vanishes on every closed loop.
    """
    if level not in (0, 1):
        raise ValueError(f"level must be 0 or 1, got {level}")
    _require_plane(
        loop,
        ("r1", "theta1"),
        (ChartKind.SINGLE_MODE_DS, ChartKind.SINGLE_MODE_DS_POLAR),
    )
    r_index = loop.chart.index("r1")
    d_index = loop.chart.index(differential)
    integral = _line_integral(
        loop,
        lambda values, delta: (math.cosh(4 * values[r_index]) - 1) * delta[d_index],
    )
    return (2 * level + 1) / 4 * integral


@dataclass(frozen=True)
class DisplacementPhases:
    """
    :param phases: Phases of the diagonal holonomy entries for |0> and |1>.
    :param abelian_phases: Per-level line integrals ∮ Im A_nn.
    :param area_integral: ∮ (y dx - x dy).
    :param difference: phases[0] - phases[1], wrapped into (-π, π].
    """

    phases: tuple
    abelian_phases: tuple
    area_integral: float
    difference: float


def small_loop_phases(area_integral):
    """
    The limit of the holonomy phases of a small displacement loop at r1 = 0,
    given its ∮ (y dx - x dy).

    Each level picks up -∮ (y dx - x dy) from the diagonal of the connection.
    The commutator [A_y, A_x] = 2iσ3 adds as much again to |0> and removes it
    from |1>, so the phases tend to (-2∮ (y dx - x dy), 0).
    """
    return (-2.0 * area_integral, 0.0)


def berry_phase_displace(loop, source="analytic"):
    """
    Berry phases of a displacement loop in the (x, y) plane at r1 = 0.

    The off-diagonal entries of A_x and A_y mix |0> and |1>, so the diagonal
    phases of the holonomy differ from the per-level abelian integrals and
    from each other. Small loops follow small_loop_phases.
    """
    _require_plane(loop, ("x", "y"), (ChartKind.SINGLE_MODE_DS,))
    if any(vertex["r1"] != 0 for vertex in loop.vertices):
        raise LoopError("Displacement loops must keep r1 = 0")
    chart = loop.chart
    connection = Connection(chart, source)
    holonomy = path_ordered_holonomy(loop, connection=connection)
    x_index = chart.index("x")
    y_index = chart.index("y")

    def diagonal(values, delta):
        matrices = connection.components(values, ["x", "y"])
        form = matrices["x"] * delta[x_index] + matrices["y"] * delta[y_index]
        return np.imag(np.diag(form))

    abelian = _line_integral(loop, diagonal)
    area = 0.0
    for start, end in loop.edges():
        x0, y0 = start[x_index], start[y_index]
        x1, y1 = end[x_index], end[y_index]
        area += 0.5 * (y0 + y1) * (x1 - x0) - 0.5 * (x0 + x1) * (y1 - y0)
    phases = holonomy.phases()
    difference = math.remainder(phases[0] - phases[1], TWO_PI)
    return DisplacementPhases(
        phases, tuple(float(a) for a in abelian), float(area), float(difference)
    )
