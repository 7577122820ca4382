"""
Control charts: families of unitaries U(σ) over real coordinates, acting on
a degenerate code block of the Kerr Hamiltonian.

Three charts are provided:

* DisplaceSqueezeChart, U = D(λ)S(μ) on {|0>, |1>}, in Cartesian or polar
  displacement coordinates,
* TwoModeChart, U = N(ξ)M(ζ) on {|00>, |01>, |10>, |11>},
* SU2Chart, U = exp(iαJx) exp(iβJy) exp(iγJz) on the same two-mode block.

Each chart exposes U(σ) for raw coordinate arrays and the closed-form
connection matrices as published, before any convention map is applied.
"""

from .abstract_chart import (
    ChartError,
    ControlChart,
    ControlPoint,
    PolarSingularityError,
    UnsupportedComponentError,
)
from .chart_kind import ChartKind
from .displace_squeeze_chart import DisplaceSqueezeChart, cartesian_from_polar
from .su2_chart import SU2Chart
from .two_mode_chart import TwoModeChart


def make_chart(kind, cutoff=None):
    """
    :param kind: A ChartKind or its display name, e.g. "SingleModeDS".
    :param cutoff: Per-mode cutoff, defaults to the chart's default.
    """
    if not isinstance(kind, ChartKind):
        kind = ChartKind.from_name(kind)
    if kind == ChartKind.SINGLE_MODE_DS:
        return DisplaceSqueezeChart(cutoff)
    if kind == ChartKind.SINGLE_MODE_DS_POLAR:
        return DisplaceSqueezeChart(cutoff, polar=True)
    if kind == ChartKind.TWO_MODE_NM:
        return TwoModeChart(cutoff)
    return SU2Chart(cutoff)


__all__ = [
    "ChartError",
    "ChartKind",
    "ControlChart",
    "ControlPoint",
    "DisplaceSqueezeChart",
    "PolarSingularityError",
    "SU2Chart",
    "TwoModeChart",
    "UnsupportedComponentError",
    "cartesian_from_polar",
    "make_chart",
]
