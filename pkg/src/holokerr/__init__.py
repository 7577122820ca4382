import holokerr.version
from _holokerr.charts import (
    ChartKind,
    ControlPoint,
    DisplaceSqueezeChart,
    SU2Chart,
    TwoModeChart,
    make_chart,
)
from _holokerr.control_charts import (
    Connection,
    commutator_norm,
    connection_analytic,
    connection_numeric,
    field_strength,
)
from _holokerr.fock_core import (
    CodeBlock,
    FockSpace,
    Operator,
    TruncationWarning,
    annihilation_op,
    expm_antihermitian,
    leakage,
    project_block,
)
from _holokerr.gate_synthesis import (
    GatePlan,
    QubitEncoding,
    compose_plan,
    plan_rotation,
    swap_gate,
    swap_plan,
)
from _holokerr.holonomy_engine import (
    LoopPath,
    PlanarRegion,
    berry_phase_displace,
    berry_phase_squeeze,
    holonomy_from_sigma,
    path_ordered_holonomy,
    stokes_holonomy,
    su2_rect_gate,
    su2_rect_region,
    surface_holonomy,
    surface_sigma,
)
from _holokerr.kick_simulator import (
    KickSchedule,
    PolygonLoop,
    deviation_table,
    kicked_evolution,
)
from _holokerr.optics_ops import (
    displacer,
    kerr_hamiltonian,
    squeezer,
    two_mode_displacer,
    two_mode_squeezer,
)

__author__ = "HoloKerr developers"

__version__ = holokerr.version.version

__all__ = [
    "ChartKind",
    "CodeBlock",
    "Connection",
    "ControlPoint",
    "DisplaceSqueezeChart",
    "FockSpace",
    "GatePlan",
    "KickSchedule",
    "LoopPath",
    "Operator",
    "PlanarRegion",
    "PolygonLoop",
    "QubitEncoding",
    "SU2Chart",
    "TruncationWarning",
    "TwoModeChart",
    "annihilation_op",
    "berry_phase_displace",
    "berry_phase_squeeze",
    "commutator_norm",
    "compose_plan",
    "connection_analytic",
    "connection_numeric",
    "deviation_table",
    "displacer",
    "expm_antihermitian",
    "field_strength",
    "holonomy_from_sigma",
    "kerr_hamiltonian",
    "kicked_evolution",
    "leakage",
    "make_chart",
    "path_ordered_holonomy",
    "plan_rotation",
    "project_block",
    "squeezer",
    "stokes_holonomy",
    "su2_rect_gate",
    "su2_rect_region",
    "surface_holonomy",
    "surface_sigma",
    "swap_gate",
    "swap_plan",
    "two_mode_displacer",
    "two_mode_squeezer",
]
