import cmath
import math

import numpy as np

from _holokerr.charts.abstract_chart import ControlChart, PolarSingularityError
from _holokerr.charts.chart_kind import ChartKind
from _holokerr.fock_core import CodeBlock
from _holokerr.optics_ops import displacer, squeezer

POLAR_SINGULARITY_RADIUS = 1e-8


class DisplaceSqueezeChart(ControlChart):
    """
    The single-mode chart U(σ) = D(λ)S(μ) acting on the Kerr qubit
    {|0>, |1>}. Coordinates are (x, y, r1, θ1) with λ = x + iy and
    μ = r1 e^{iθ1}, or (r0, θ0, r1, θ1) with λ = r0 e^{iθ0} when polar.

    >>> chart = DisplaceSqueezeChart(cutoff=8)
    >>> chart.coordinate_names
    ('x', 'y', 'r1', 'theta1')
    """

    default_cutoff = 32

    def __init__(self, cutoff=None, polar=False):
        self.polar = polar
        super().__init__(cutoff)

    @property
    def kind(self):
        if self.polar:
            return ChartKind.SINGLE_MODE_DS_POLAR
        return ChartKind.SINGLE_MODE_DS

    @property
    def coordinate_names(self):
        if self.polar:
            return ("r0", "theta0", "r1", "theta1")
        return ("x", "y", "r1", "theta1")

    @property
    def radial_coordinates(self):
        return frozenset({"r0", "r1"} if self.polar else {"r1"})

    @property
    def periodic_coordinates(self):
        return frozenset({"theta0", "theta1"} if self.polar else {"theta1"})

    @property
    def n_modes(self):
        return 1

    @property
    def block(self):
        return CodeBlock.kerr_ground(1)

    def with_cutoff(self, cutoff):
        return DisplaceSqueezeChart(cutoff=cutoff, polar=self.polar)

    def displacement(self, values):
        first, second = values[0], values[1]
        if self.polar:
            return cmath.rect(first, second)
        return complex(first, second)

    def unitary_from_values(self, values):
        lam = self.displacement(values)
        mu = cmath.rect(values[2], values[3])
        return displacer(self.space, 0, lam) @ squeezer(self.space, 0, mu)

    def check_values(self, values):
        if self.polar and abs(values[0]) < POLAR_SINGULARITY_RADIUS:
            raise PolarSingularityError(
                f"Polar displacement coordinates are singular at r0={values[0]:.3e}"
            )

    def published_connection(self, values, component):
        self.check_closed_form(component)
        r1, theta1 = values[2], values[3]
        c = math.cosh(2 * r1)
        s = math.sinh(2 * r1)
        if component == "r1":
            return np.zeros((2, 2), dtype=complex)
        if component == "theta1":
            return 0.25j * (math.cosh(4 * r1) - 1) * np.diag([1.0, 3.0]).astype(complex)
        if self.polar:
            r0, theta0 = values[0], values[1]
            e0 = cmath.exp(1j * theta0)
            e01 = cmath.exp(1j * (theta0 + theta1))
            if component == "r0":
                return np.array(
                    [
                        [0.0, -(e0.conjugate() * c - e01 * s)],
                        [e0 * c - e01.conjugate() * s, 0.0],
                    ],
                    dtype=complex,
                )
            return np.array(
                [
                    [1j * r0**2, 1j * r0 * (e0.conjugate() * c + e01 * s)],
                    [1j * r0 * (e0 * c + e01.conjugate() * s), 1j * r0**2],
                ],
                dtype=complex,
            )
        x, y = values[0], values[1]
        e1 = cmath.exp(1j * theta1)
        if component == "x":
            return np.array(
                [[-1j * y, -(c - e1 * s)], [c - e1.conjugate() * s, -1j * y]],
                dtype=complex,
            )
        return np.array(
            [
                [1j * x, 1j * (c + e1 * s)],
                [1j * (c + e1.conjugate() * s), 1j * x],
            ],
            dtype=complex,
        )


def cartesian_from_polar(a_r0, a_theta0, r0, theta0):
    """
    The chain rule A_x = cosθ0 A_r0 - (sinθ0/r0) A_θ0,
    A_y = sinθ0 A_r0 + (cosθ0/r0) A_θ0.

    :returns: Tuple (A_x, A_y).
    """
    if abs(r0) < POLAR_SINGULARITY_RADIUS:
        raise PolarSingularityError(
            f"Chain rule from polar components is singular at r0={r0:.3e}"
        )
    cos0 = math.cos(theta0)
    sin0 = math.sin(theta0)
    a_x = cos0 * a_r0 - (sin0 / r0) * a_theta0
    a_y = sin0 * a_r0 + (cos0 / r0) * a_theta0
    return a_x, a_y
