from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as distribution_version

DISTRIBUTION = "HoloKerr"


def installed_version():
    try:
        return distribution_version(DISTRIBUTION)
    except PackageNotFoundError:
        # source checkout without an install
        return "0.0.0"


version = installed_version()
