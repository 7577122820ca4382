from enum import Enum, auto, unique


@unique
class ChartKind(Enum):
    SINGLE_MODE_DS = auto()
    SINGLE_MODE_DS_POLAR = auto()
    TWO_MODE_NM = auto()
    SU2_INTERFEROMETER = auto()

    @classmethod
    def names(cls):
        return {
            cls.SINGLE_MODE_DS: "SingleModeDS",
            cls.SINGLE_MODE_DS_POLAR: "SingleModeDSPolar",
            cls.TWO_MODE_NM: "TwoModeNM",
            cls.SU2_INTERFEROMETER: "SU2Interferometer",
        }

    @classmethod
    def from_name(cls, name):
        for kind, kind_name in cls.names().items():
            if name in (kind_name, kind.name):
                return kind
        raise ValueError(
            f"Unknown chart {name!r}, expected one of {list(cls.names().values())}"
        )

    @property
    def display_name(self):
        return self.names()[self]
