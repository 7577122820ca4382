import cmath
import math

import numpy as np

from _holokerr.charts.abstract_chart import ControlChart
from _holokerr.charts.chart_kind import ChartKind
from _holokerr.fock_core import CodeBlock
from _holokerr.optics_ops import SU2Angles, su2_unitary

MODES = (0, 1)


def embed_middle(matrix):
    """
    Places a 2x2 matrix on the {|01>, |10>} rows and columns of the
    two-mode block, zeros elsewhere.
    """
    full = np.zeros((4, 4), dtype=complex)
    full[1:3, 1:3] = matrix
    return full


class SU2Chart(ControlChart):
    """
    The interferometer chart U = exp(iαJx) exp(iβJy) exp(iγJz) on the
    block {|00>, |01>, |10>, |11>}. The interferometer conserves n₁ + n₂, so
    any cutoff of at least 3 reproduces the block exactly.
    """

    default_cutoff = 4

    @property
    def kind(self):
        return ChartKind.SU2_INTERFEROMETER

    @property
    def coordinate_names(self):
        return ("alpha", "beta", "gamma")

    @property
    def n_modes(self):
        return 2

    @property
    def block(self):
        return CodeBlock.kerr_ground(2)

    def unitary_from_values(self, values):
        return su2_unitary(self.space, MODES, SU2Angles(*values))

    def published_connection(self, values, component):
        self.check_closed_form(component)
        _, beta, gamma = values
        eg = cmath.exp(1j * gamma)
        if component == "alpha":
            return 0.5j * embed_middle(
                [
                    [math.sin(beta), math.cos(beta) * eg],
                    [math.cos(beta) * eg.conjugate(), -math.sin(beta)],
                ]
            )
        if component == "beta":
            return -0.5 * embed_middle([[0.0, eg], [-eg.conjugate(), 0.0]])
        return -0.5j * np.diag([0.0, 1.0, -1.0, 0.0]).astype(complex)
