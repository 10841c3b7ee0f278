"""Exception hierarchy for the metasurface CZ simulator."""


class MetaczError(Exception):
    """Base class for every error raised by metacz."""


class DimensionError(MetaczError, ValueError):
    """Matrix or state dimensions do not fit together."""


class PhotonNumberError(MetaczError, ValueError):
    """Photon number outside the supported range or inconsistent across terms."""


class NormError(MetaczError, ValueError):
    """A state is not normalized where normalization is required."""


class ConfigError(MetaczError, ValueError):
    """Invalid metasurface configuration or configuration document."""


class EncodingError(MetaczError, ValueError):
    """Invalid qubit encoding, or an encoding used where another is required."""


class BasisMismatchError(MetaczError, ValueError):
    """A mode unitary and an encoding live over different mode bases."""


class ZeroOperatorError(MetaczError, ValueError):
    """A post-selected operator vanishes, so no fidelity can be defined."""


class SweepError(MetaczError, ValueError):
    """A sweep grid point failed; the message names the parameter value."""


class UsageError(MetaczError, ValueError):
    """Invalid combination of command-line arguments."""
