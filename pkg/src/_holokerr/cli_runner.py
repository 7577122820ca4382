"""
Command-line front end: runs one verification suite or experiment and writes
its table as CSV or its full diagnostics as JSON.

Exit status is 0 when every check passes, 1 on a tolerance failure, 2 on a
configuration error and 3 when a result does not survive cutoff doubling.
"""

import argparse
import csv
import dataclasses
import json
import logging
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from _holokerr.charts import ChartKind, DisplaceSqueezeChart, make_chart
from _holokerr.control_charts import (
    Connection,
    TruncationConvergenceError,
    calibrate_connection,
    commutator_norm,
    connection_numeric,
    edge_weight,
    field_strength,
    hermiticity_defect,
    probe_points,
)
from _holokerr.conventions import (
    KICK_CONVENTION,
    REFERENCE_DEVIATIONS,
    REFERENCE_LOOP,
    REFERENCE_M,
    REFERENCE_M_VALUES,
    KickConvention,
    KickCount,
    VertexOffset,
    generator,
    ledger_as_dict,
)
from _holokerr.fock_core import CodeBlock, FockSpace, project_block
from _holokerr.gate_synthesis import GatePlan, compose_plan, swap_plan
from _holokerr.holonomy_engine import (
    SURFACE_FAMILIES,
    SU2_RECT_PLANES,
    LoopPath,
    PlanarRegion,
    berry_phase_displace,
    berry_phase_squeeze,
    path_ordered_holonomy,
    reconcile_generator,
    small_loop_phases,
    stokes_holonomy,
    su2_rect_gate,
    su2_rect_region,
    surface_holonomy,
    surface_sigma,
)
from _holokerr.kick_simulator import (
    TABLE_TOLERANCE,
    KickSchedule,
    KickScheduleError,
    PolygonLoop,
    convention_calibration,
    deviation_table,
    kicked_evolution,
)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3

FORMATS = ("csv", "json")

# Rectangles for the route comparison, ((a1, b1), (a2, b2)) in family plane.
HOLONOMY_BOUNDS = {
    "I": ((0.0, 0.5), (0.0, 0.5)),
    "II": ((0.0, 0.5), (0.0, 0.5)),
    "III": ((0.0, 0.5), (0.0, 1.0)),
    "IV": ((0.0, 0.3), (0.0, 0.8)),
    "V": ((0.0, 0.3), (0.0, 0.8)),
}
STOKES_ANGLES = (0.2, math.pi / 4, 1.0)
SQUEEZE_BOUNDS = ((0.1, 0.3), (0.0, 0.5))
DISPLACEMENT_SQUARE = 0.01
PHASE_INEQUALITY = 1e-3


class ConfigError(Exception):
    """
    Raised for an unreadable config file, unknown keys or invalid values.
    """

    pass


def _from_dict(cls, data, where):
    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be a JSON object, got {type(data).__name__}")
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"Unknown {where} keys: {unknown}")
    return data


@dataclass(frozen=True)
class KickSettings:
    """
    Settings of the kick-convergence experiment. The defaults reproduce the
    reference table setup: T = 0.1, X = 1, unit radius, 5, 10, 20 and 26
    kicks against 100.

    :param require_table_match: Compare against the reference table. None
        compares whenever m_values and reference_m are the reference ones.
    """

    total_time: float = 0.1
    coupling: float = 1.0
    radius: float = 1.0
    m_values: tuple = REFERENCE_M_VALUES
    reference_m: int = REFERENCE_M
    cutoff: int = 32
    kick_count: str = KICK_CONVENTION.kick_count.value
    start_at_origin: bool = KICK_CONVENTION.start_at_origin
    vertex_offset: str = KICK_CONVENTION.vertex_offset.value
    check_cutoff_doubling: bool = True
    cutoff_tolerance: float = 1e-8
    require_table_match: object = None

    def __post_init__(self):
        object.__setattr__(
            self, "m_values", tuple(sorted(int(m) for m in self.m_values))
        )
        try:
            self.convention()
            self.schedule()
        except (ValueError, KickScheduleError) as err:
            raise ConfigError(f"Invalid kick settings: {err}") from err
        if self.m_values and min(self.m_values) < 3:
            raise ConfigError(f"Kick counts must be at least 3, got {self.m_values}")
        if self.m_values and self.reference_m < max(self.m_values):
            raise ConfigError(
                f"reference_m={self.reference_m} is smaller than {max(self.m_values)}"
            )
        reference_setup = (
            self.m_values == REFERENCE_M_VALUES
            and self.reference_m == REFERENCE_M
            and (self.total_time, self.coupling, self.radius) == REFERENCE_LOOP
        )
        if self.require_table_match is None:
            object.__setattr__(self, "require_table_match", reference_setup)
        elif self.require_table_match and not reference_setup:
            raise ConfigError(
                "require_table_match needs m_values "
                f"{list(REFERENCE_M_VALUES)}, reference_m {REFERENCE_M} and"
                f" (total_time, coupling, radius) = {REFERENCE_LOOP}"
            )

    @classmethod
    def from_dict(cls, data):
        return cls(**_from_dict(cls, data, "kick"))

    def convention(self):
        return KickConvention(
            KickCount(self.kick_count),
            bool(self.start_at_origin),
            VertexOffset(self.vertex_offset),
        )

    def schedule(self):
        return KickSchedule(
            self.total_time, self.coupling, KickCount(self.kick_count)
        )


@dataclass(frozen=True)
class ExperimentConfig:
    """
    :param suite: Name of the suite to run, see SUITES.
    :param chart: Chart display name, or None for every chart.
    :param cutoff: Per-mode cutoff of the charts and the kick experiment,
        None for their defaults.
    :param source: Connection source of the holonomy routes.
    :param swap_cutoff: Per-mode cutoff of the four-mode SWAP space.
    """

    suite: str = "swap-demo"
    chart: object = None
    seed: int = 0
    n_probes: int = 20
    cutoff: object = None
    source: str = "analytic"
    step: float = 1e-5
    steps_per_edge: int = 200
    stokes_slices: int = 128
    quadrature_order: int = 32
    check_truncation: bool = True
    swap_cutoff: int = 4
    connection_tolerance: float = 1e-5
    field_strength_tolerance: float = 1e-5
    commutator_tolerance: float = 1e-8
    route_tolerance: float = 1e-5
    swap_tolerance: float = 1e-8
    leakage_tolerance: float = 1e-10
    berry_ratio_tolerance: float = 1e-6
    kick: KickSettings = field(default_factory=KickSettings)
    out: object = None
    format: str = "csv"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(
                f"Unknown suite {self.suite!r}, expected one of {sorted(SUITES)}"
            )
        if self.chart is not None:
            try:
                ChartKind.from_name(self.chart)
            except ValueError as err:
                raise ConfigError(str(err)) from err
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown format {self.format!r}, expected {FORMATS}")
        if self.source not in ("analytic", "numeric"):
            raise ConfigError(f"Unknown connection source {self.source!r}")
        if self.cutoff is not None and int(self.cutoff) < 2:
            raise ConfigError(f"cutoff must be at least 2, got {self.cutoff}")
        if self.n_probes < 1 or self.steps_per_edge < 1 or self.stokes_slices < 1:
            raise ConfigError("n_probes, steps_per_edge and stokes_slices must be >= 1")
        if not self.step > 0:
            raise ConfigError(f"step must be positive, got {self.step}")
        if isinstance(self.kick, dict):
            object.__setattr__(self, "kick", KickSettings.from_dict(self.kick))

    @classmethod
    def from_dict(cls, data):
        return cls(**_from_dict(cls, data, "config"))

    def charts(self):
        if self.chart is None:
            kinds = list(ChartKind)
        else:
            kinds = [ChartKind.from_name(self.chart)]
        return [make_chart(kind, self.cutoff) for kind in kinds]

    def as_dict(self):
        data = dataclasses.asdict(self)
        data["kick"]["m_values"] = list(self.kick.m_values)
        return data


@dataclass(frozen=True)
class SuiteReport:
    """
    :param rows: Table rows, dicts with the same keys for every row of a
        suite.
    :param diagnostics: Extra JSON-serializable values.
    """

    suite: str
    rows: list
    passed: bool
    diagnostics: dict = field(default_factory=dict)


def _max_deviation(first, second):
    return float(np.max(np.abs(np.asarray(first) - np.asarray(second))))


def _hardest_probe(points):
    return max(points, key=edge_weight)


def run_check_connection(config):
    """
    Closed-form against finite-difference connection components at seeded
    probe points. With check_truncation the cutoff is first doubled at the
    probe with the largest edge weight until the component is stable, and
    every probe is evaluated at the resulting cutoff.
    """
    rows = []
    for chart in config.charts():
        analytic = Connection(chart, "analytic")
        points = probe_points(chart, config.n_probes, config.seed)
        for component in chart.closed_form_components:
            cutoff = chart.cutoff
            if config.check_truncation:
                cutoff = connection_numeric(
                    _hardest_probe(points),
                    component,
                    config.step,
                    check_truncation=True,
                ).cutoff
            numeric = Connection(chart.with_cutoff(cutoff), "numeric", config.step)
            deviation = 0.0
            hermiticity = 0.0
            for point in points:
                measured = numeric(point.values, component)
                deviation = max(
                    deviation,
                    _max_deviation(analytic(point.values, component), measured),
                )
                hermiticity = max(hermiticity, hermiticity_defect(measured))
            rows.append(
                {
                    "chart": chart.kind.display_name,
                    "component": component,
                    "cutoff": cutoff,
                    "max_deviation": deviation,
                    "hermiticity_defect": hermiticity,
                    "passed": deviation < config.connection_tolerance,
                }
            )
            logger.info(
                "%s A_%s max deviation %.3e at cutoff %d",
                chart.kind.display_name,
                component,
                deviation,
                cutoff,
            )
    return SuiteReport(config.suite, rows, all(row["passed"] for row in rows))


def _family_chart(config, family):
    return make_chart(family.chart_kind, config.cutoff)


def run_check_field_strength(config):
    """
    Field strengths on the five commuting planes against -i G density, and
    the commutator norms of the plane components.
    """
    rows = []
    for which, family in SURFACE_FAMILIES.items():
        chart = _family_chart(config, family)
        first, second = family.plane
        expected_generator = generator(which)
        deviation = 0.0
        commutators = 0.0
        for point in probe_points(chart, config.n_probes, config.seed):
            point = point.replace(**family.frozen)
            measured = field_strength(point, first, second, config.source).matrix
            density = family.density(point[first], point[second])
            deviation = max(
                deviation, _max_deviation(measured, -1j * density * expected_generator)
            )
            commutators = max(
                commutators, commutator_norm(point, first, second, config.source)
            )
        rows.append(
            {
                "family": which,
                "chart": chart.kind.display_name,
                "plane": f"{first}-{second}",
                "max_deviation": deviation,
                "commutator_norm": commutators,
                "passed": deviation < config.field_strength_tolerance
                and commutators < config.commutator_tolerance,
            }
        )
    return SuiteReport(config.suite, rows, all(row["passed"] for row in rows))


def run_holonomy(config):
    """
    Surface-integral holonomies against path-ordered holonomies of the
    bounding rectangles.
    """
    rows = []
    for which, family in SURFACE_FAMILIES.items():
        region = PlanarRegion(
            _family_chart(config, family),
            family.plane,
            HOLONOMY_BOUNDS[which],
            family.frozen,
            config.quadrature_order,
        )
        closed_form = surface_sigma(region, which)
        quadrature = surface_sigma(region, which, method="quadrature")
        surface = surface_holonomy(region, which)
        ordered = path_ordered_holonomy(
            region.boundary(config.steps_per_edge), config.source
        )
        distance = surface.distance(ordered)
        rows.append(
            {
                "family": which,
                "sigma_closed_form": closed_form,
                "sigma_quadrature": quadrature,
                "route_distance": distance,
                "unitarity_defect": ordered.unitarity_defect,
                "passed": distance < config.route_tolerance
                and abs(closed_form - quadrature) < config.route_tolerance,
            }
        )
    return SuiteReport(config.suite, rows, all(row["passed"] for row in rows))


def run_stokes(config):
    """
    Stokes, path-ordered and closed-form holonomies of the interferometer
    rectangles.
    """
    rows = []
    chart = make_chart(ChartKind.SU2_INTERFEROMETER, config.cutoff)
    for kind in SU2_RECT_PLANES:
        for angle in STOKES_ANGLES:
            region = su2_rect_region(kind, angle, chart)
            stokes = stokes_holonomy(
                region,
                config.source,
                slices=config.stokes_slices,
                order=config.quadrature_order,
            )
            ordered = path_ordered_holonomy(
                region.boundary(config.steps_per_edge), config.source
            )
            gate = su2_rect_gate(kind, angle)
            stokes_distance = stokes.distance(ordered)
            gate_distance = ordered.distance(gate)
            rows.append(
                {
                    "rectangle": kind,
                    "angle": angle,
                    "stokes_vs_path": stokes_distance,
                    "path_vs_closed_form": gate_distance,
                    "passed": stokes_distance < config.route_tolerance
                    and gate_distance < config.route_tolerance,
                }
            )
    return SuiteReport(config.suite, rows, all(row["passed"] for row in rows))


def _check_row(quantity, value, expected, tolerance, passed):
    return {
        "quantity": quantity,
        "value": float(value),
        "expected": float(expected),
        "tolerance": float(tolerance),
        "passed": bool(passed),
    }


def run_berry_phase(config):
    """
    Squeeze-loop phases in the ratio 3:1 and equal to the holonomy phases,
    the small displacement square against the area law, and the |0>/|1>
    phase inequality on the unit circle.
    """
    chart = DisplaceSqueezeChart(config.cutoff)
    rows = []

    squeeze_loop = LoopPath.rectangle(
        chart, ("r1", "theta1"), SQUEEZE_BOUNDS, steps_per_edge=config.steps_per_edge
    )
    phi0 = berry_phase_squeeze(squeeze_loop, 0)
    phi1 = berry_phase_squeeze(squeeze_loop, 1)
    ratio = phi1 / phi0
    rows.append(
        _check_row(
            "squeeze_ratio",
            ratio,
            3.0,
            config.berry_ratio_tolerance,
            abs(ratio - 3) < 3 * config.berry_ratio_tolerance,
        )
    )
    squeeze_holonomy = path_ordered_holonomy(squeeze_loop, config.source)
    for level, (phi, phase) in enumerate(zip((phi0, phi1), squeeze_holonomy.phases())):
        mismatch = abs(math.remainder(phi - phase, 2 * math.pi))
        rows.append(
            _check_row(
                f"squeeze_holonomy_phase_{level}",
                phase,
                math.remainder(phi, 2 * math.pi),
                config.route_tolerance,
                mismatch < config.route_tolerance,
            )
        )

    epsilon = DISPLACEMENT_SQUARE
    square = LoopPath.rectangle(
        chart, ("x", "y"), ((0.0, epsilon), (0.0, epsilon)), steps_per_edge=20
    )
    small = berry_phase_displace(square, config.source)
    for level, (value, expected) in enumerate(
        zip(small.phases, small_loop_phases(small.area_integral))
    ):
        rows.append(
            _check_row(
                f"displacement_phase_{level}",
                value,
                expected,
                epsilon**3,
                abs(value - expected) < epsilon**3,
            )
        )

    circle = LoopPath.circle(chart, ("x", "y"), (0.0, 0.0), 1.0)
    unit = berry_phase_displace(circle, config.source)
    rows.append(
        _check_row(
            "circle_phase_difference",
            abs(unit.difference),
            PHASE_INEQUALITY,
            PHASE_INEQUALITY,
            abs(unit.difference) > PHASE_INEQUALITY,
        )
    )
    diagnostics = {
        "squeeze_phases": [phi0, phi1],
        "squeeze_holonomy_phases": list(squeeze_holonomy.phases()),
        "squeeze_dr1_integral": berry_phase_squeeze(
            squeeze_loop, 0, differential="r1"
        ),
        "small_square_area_integral": small.area_integral,
        "small_square_abelian_phases": list(small.abelian_phases),
        "unit_circle_holonomy_phases": list(unit.phases),
        "unit_circle_abelian_phases": list(unit.abelian_phases),
    }
    return SuiteReport(
        config.suite, rows, all(row["passed"] for row in rows), diagnostics
    )


def _kick_block(settings, m, cutoff):
    polygon = PolygonLoop.from_convention(m, settings.convention(), settings.radius)
    evolution = kicked_evolution(polygon, settings.schedule(), FockSpace(1, cutoff))
    return project_block(evolution, CodeBlock.kerr_ground(1))


def run_kick_convergence(config):
    """
    The percent-deviation table of the kick method. Also checks that the 01
    and 10 rows agree, that every row decreases with m and, when asked for,
    that the table is within tolerance of the reference one.
    """
    settings = config.kick
    cutoff = settings.cutoff if config.cutoff is None else int(config.cutoff)
    report = deviation_table(
        settings.m_values,
        settings.reference_m,
        settings.schedule(),
        settings.convention(),
        settings.radius,
        cutoff=cutoff,
    )
    symmetric = report.symmetry_defect < 1e-10
    monotone = all(
        np.all(np.diff(report.deviations[row]) < 0)
        for row in range(4)
        if not np.any(np.isnan(report.deviations[row]))
    )
    diagnostics = {
        "symmetry_defect": report.symmetry_defect,
        "monotone": bool(monotone),
        "flagged": list(report.flagged),
        "convention": settings.convention().as_dict(),
        "cutoff": cutoff,
    }
    passed = symmetric and monotone
    if settings.require_table_match:
        relative = np.abs(report.deviations - REFERENCE_DEVIATIONS) / (
            REFERENCE_DEVIATIONS
        )
        worst = float(np.nanmax(relative))
        diagnostics["max_relative_table_error"] = worst
        passed = passed and worst <= TABLE_TOLERANCE
    if settings.check_cutoff_doubling:
        coarse = _kick_block(settings, settings.reference_m, cutoff)
        fine = _kick_block(settings, settings.reference_m, 2 * cutoff)
        change = _max_deviation(coarse, fine)
        diagnostics["cutoff_doubling_change"] = change
        if change > settings.cutoff_tolerance:
            raise TruncationConvergenceError(
                f"Kick logical block changed by {change:.3e} when the cutoff was"
                f" doubled from {cutoff}"
            )
    return SuiteReport(config.suite, report.rows(), bool(passed), diagnostics)


def run_swap_demo(config):
    """
    The dual-rail SWAP from two interferometer rectangles, its square and
    its leakage.
    """
    plan = swap_plan()
    result = compose_plan(plan, config.swap_cutoff)
    squared = compose_plan(
        GatePlan(plan.encodings, plan.steps + plan.steps, np.eye(4)),
        config.swap_cutoff,
    )
    rows = [
        _check_row(
            "distance_to_swap",
            result.distance,
            0.0,
            config.swap_tolerance,
            result.distance < config.swap_tolerance,
        ),
        _check_row(
            "swap_squared_distance",
            squared.distance,
            0.0,
            config.swap_tolerance,
            squared.distance < config.swap_tolerance,
        ),
        _check_row(
            "leakage",
            result.leakage,
            0.0,
            config.leakage_tolerance,
            result.leakage < config.leakage_tolerance,
        ),
    ]
    diagnostics = {
        "logical_real": np.real(result.logical).tolist(),
        "logical_imag": np.imag(result.logical).tolist(),
    }
    return SuiteReport(
        config.suite, rows, all(row["passed"] for row in rows), diagnostics
    )


def run_calibrate_conventions(config):
    """
    Refits every convention of the ledger from scratch and reports whether
    each fit agrees with the frozen value.
    """
    rows = []
    for chart in config.charts():
        result = calibrate_connection(chart, config.n_probes, config.seed, config.step)
        rows.append(
            {
                "item": chart.kind.display_name,
                "selected": json.dumps(result.convention.as_dict(), sort_keys=True),
                "residual": result.residual,
                "agrees_with_ledger": result.agrees_with_ledger,
            }
        )
    for which in SURFACE_FAMILIES:
        reconciled = reconcile_generator(which)
        rows.append(
            {
                "item": f"generator {which}",
                "selected": reconciled.label,
                "residual": reconciled.residual,
                "agrees_with_ledger": reconciled.matches_ledger,
            }
        )
    settings = config.kick
    kicks = convention_calibration(
        settings.schedule(),
        settings.radius,
        settings.cutoff if config.cutoff is None else int(config.cutoff),
        with_order=True,
    )
    rows.append(
        {
            "item": "kick convention",
            "selected": json.dumps(kicks.selected.convention.as_dict(), sort_keys=True),
            "residual": kicks.selected.max_relative_error,
            "agrees_with_ledger": kicks.agrees_with_ledger,
        }
    )
    return SuiteReport(
        config.suite,
        rows,
        all(row["agrees_with_ledger"] for row in rows),
        {
            "kick_within_tolerance": kicks.within_tolerance,
            "kick_candidates": [
                {
                    **score.convention.as_dict(),
                    "total_relative_error": score.total_relative_error,
                    "max_relative_error": score.max_relative_error,
                    "order": score.order,
                }
                for score in kicks.scores
            ],
        },
    )


SUITES = {
    "check-connection": run_check_connection,
    "check-field-strength": run_check_field_strength,
    "holonomy": run_holonomy,
    "stokes": run_stokes,
    "berry-phase": run_berry_phase,
    "kick-convergence": run_kick_convergence,
    "swap-demo": run_swap_demo,
    "calibrate-conventions": run_calibrate_conventions,
}


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def write_csv(report, stream):
    fieldnames = []
    for row in report.rows:
        fieldnames.extend(key for key in row if key not in fieldnames)
    writer = csv.DictWriter(stream, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in report.rows:
        writer.writerow(row)


def write_json(report, config, stream):
    document = {
        "suite": report.suite,
        "passed": report.passed,
        "config": config.as_dict(),
        "rows": report.rows,
        "diagnostics": report.diagnostics,
        "conventions": ledger_as_dict(),
    }
    json.dump(_jsonable(document), stream, indent=2, sort_keys=True)
    stream.write("\n")


def write_report(report, config):
    def emit(stream):
        if config.format == "csv":
            write_csv(report, stream)
        else:
            write_json(report, config, stream)

    if config.out is None:
        emit(sys.stdout)
        return
    with open(config.out, "w", newline="", encoding="utf-8") as stream:
        emit(stream)


def run(config):
    """
    Runs the configured suite and writes its report.

    :returns: The exit status, EXIT_PASS or EXIT_TOLERANCE.
    :raises TruncationConvergenceError: If a cutoff-doubling check fails.
    """
    logger.info("Running suite %s", config.suite)
    report = SUITES[config.suite](config)
    write_report(report, config)
    if not report.passed:
        logger.warning("Suite %s failed a tolerance check", config.suite)
        return EXIT_TOLERANCE
    return EXIT_PASS


def load_config(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as stream:
            return json.load(stream)
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"Could not read config {path}: {err}") from err


def build_config(args):
    """
    The config file's values with command-line flags on top.
    """
    data = load_config(args.config)
    if not isinstance(data, dict):
        raise ConfigError("Config file must hold a JSON object")
    data = dict(data)
    suite = getattr(args, "suite", None)
    if args.command != "run":
        suite = args.command
    if suite is not None:
        data["suite"] = suite
    for name in ("seed", "cutoff", "out", "format", "chart"):
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    try:
        return ExperimentConfig.from_dict(data)
    except TypeError as err:
        raise ConfigError(f"Invalid config: {err}") from err


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON experiment config")
    common.add_argument("--seed", type=int, help="Seed of the probe points")
    common.add_argument("--cutoff", type=int, help="Per-mode Fock cutoff")
    common.add_argument("--chart", help="Restrict to one chart, e.g. SingleModeDS")
    common.add_argument("--out", metavar="PATH", help="Output file, stdout if unset")
    common.add_argument("--format", choices=FORMATS, help="Output format")
    common.add_argument(
        "-v", "--verbose", action="store_true", help="Log progress at DEBUG level"
    )

    parser = argparse.ArgumentParser(
        prog="holokerr",
        description="Holonomic quantum computation verification suites",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    run_parser = commands.add_parser(
        "run", parents=[common], help="Run the suite named by --suite or the config"
    )
    run_parser.add_argument("--suite", choices=sorted(SUITES), metavar="NAME")
    for name, function in SUITES.items():
        summary = function.__doc__.strip().splitlines()[0]
        commands.add_parser(name, parents=[common], help=summary)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = build_config(args)
    except ConfigError as err:
        logger.error("%s", err)
        return EXIT_CONFIG
    try:
        return run(config)
    except TruncationConvergenceError as err:
        logger.error("%s", err)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
