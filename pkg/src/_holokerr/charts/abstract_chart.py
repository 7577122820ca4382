from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from _holokerr.fock_core import FockSpace


class ChartError(Exception):
    """
    Raised for unknown coordinates or components, and for points that do not
    belong to the chart.
    """

    pass


class UnsupportedComponentError(ChartError):
    """
    Raised when a closed-form connection is requested for a component that
    has none.
    """

    pass


class PolarSingularityError(ChartError):
    """
    Raised when a polar displacement component is requested at r0 ≈ 0.
    """

    pass


@dataclass(frozen=True, eq=False)
class ControlPoint:
    """
    A point σ of a control chart. Values are stored in the chart's
    coordinate order.
    """

    chart: "ControlChart"
    values: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != len(self.chart.coordinate_names):
            raise ChartError(
                f"{self.chart.kind.display_name} takes coordinates "
                f"{self.chart.coordinate_names}, got {len(values)} values"
            )
        for name, value in zip(self.chart.coordinate_names, values):
            if name in self.chart.radial_coordinates and value < 0:
                raise ValueError(f"Coordinate {name} must be non-negative, got {value}")
        object.__setattr__(self, "values", values)

    def __getitem__(self, name):
        return self.values[self.chart.index(name)]

    def as_array(self):
        return np.array(self.values)

    def as_dict(self):
        return dict(zip(self.chart.coordinate_names, self.values))

    def replace(self, **changes):
        coords = self.as_dict()
        for name in changes:
            self.chart.index(name)
        coords.update(changes)
        return self.chart.point(**coords)

    def __repr__(self):
        coords = ", ".join(f"{k}={v:.6g}" for k, v in self.as_dict().items())
        return f"ControlPoint({self.chart.kind.display_name}: {coords})"


class ControlChart(ABC):
    """
    A control chart is a family of unitaries U(σ) over named real
    coordinates, together with the code block the family acts on.

    Concrete charts build U(σ) from the optical operators and carry the
    published closed forms of the connection. Raw coordinate arrays are
    accepted everywhere so that finite differences may step outside the
    chart's domain (e.g. to negative radii).
    """

    default_cutoff = 16
    radial_coordinates = frozenset()
    periodic_coordinates = frozenset()

    def __init__(self, cutoff=None):
        self.cutoff = self.default_cutoff if cutoff is None else int(cutoff)
        self.space = FockSpace(self.n_modes, self.cutoff)

    @property
    @abstractmethod
    def kind(self):
        pass

    @property
    @abstractmethod
    def coordinate_names(self):
        pass

    @property
    @abstractmethod
    def n_modes(self):
        pass

    @property
    @abstractmethod
    def block(self):
        pass

    @property
    def closed_form_components(self):
        return self.coordinate_names

    @abstractmethod
    def unitary_from_values(self, values):
        """
        The full-space unitary U(σ) for a raw coordinate array.
        """
        pass

    @abstractmethod
    def published_connection(self, values, component):
        """
        The closed-form connection matrix, evaluated literally, without any
        convention map applied.
        """
        pass

    def check_values(self, values):
        """
        Hook for charts with coordinate singularities.
        """
        pass

    def index(self, name):
        try:
            return self.coordinate_names.index(name)
        except ValueError as err:
            raise ChartError(
                f"{self.kind.display_name} has no coordinate {name!r}, "
                f"expected one of {self.coordinate_names}"
            ) from err

    def point(self, **coords):
        """
        A ControlPoint with the given coordinates, unspecified ones are 0.
        """
        for name in coords:
            self.index(name)
        return ControlPoint(
            self, tuple(coords.get(name, 0.0) for name in self.coordinate_names)
        )

    def origin(self):
        return self.point()

    def with_cutoff(self, cutoff):
        return type(self)(cutoff=cutoff)

    def check_closed_form(self, component):
        self.index(component)
        if component not in self.closed_form_components:
            raise UnsupportedComponentError(
                f"No closed-form connection for {component} on "
                f"{self.kind.display_name}"
            )

    def __repr__(self):
        return f"{type(self).__name__}(cutoff={self.cutoff})"
