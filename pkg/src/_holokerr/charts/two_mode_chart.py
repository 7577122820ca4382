import cmath
import math

import numpy as np

from _holokerr.charts.abstract_chart import ControlChart
from _holokerr.charts.chart_kind import ChartKind
from _holokerr.fock_core import CodeBlock
from _holokerr.optics_ops import two_mode_displacer, two_mode_squeezer

MODES = (0, 1)


class TwoModeChart(ControlChart):
    """
    The two-mode chart U(σ) = N(ξ)M(ζ) with ζ = r2 e^{iθ2} and
    ξ = r3 e^{iθ3}, acting on the block {|00>, |01>, |10>, |11>}.

    Only A_r2 and A_r3 have closed forms.
    """

    default_cutoff = 16
    radial_coordinates = frozenset({"r2", "r3"})
    periodic_coordinates = frozenset({"theta2", "theta3"})

    @property
    def kind(self):
        return ChartKind.TWO_MODE_NM

    @property
    def coordinate_names(self):
        return ("r2", "theta2", "r3", "theta3")

    @property
    def closed_form_components(self):
        return ("r2", "r3")

    @property
    def n_modes(self):
        return 2

    @property
    def block(self):
        return CodeBlock.kerr_ground(2)

    def unitary_from_values(self, values):
        r2, theta2, r3, theta3 = values
        return two_mode_displacer(
            self.space, MODES, cmath.rect(r3, theta3)
        ) @ two_mode_squeezer(self.space, MODES, cmath.rect(r2, theta2))

    def published_connection(self, values, component):
        self.check_closed_form(component)
        r2, theta2, _, theta3 = values
        matrix = np.zeros((4, 4), dtype=complex)
        if component == "r2":
            matrix[0, 3] = -cmath.exp(-1j * theta2)
            matrix[3, 0] = cmath.exp(1j * theta2)
            return matrix
        matrix[1, 2] = -cmath.exp(-1j * theta3)
        matrix[2, 1] = cmath.exp(1j * theta3)
        return (2 * math.cosh(r2) ** 2 - 1) * matrix
