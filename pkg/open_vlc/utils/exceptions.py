"""Exceptions raised by open-VLC.

The CLI maps :class:`ConfigurationError`, :class:`GeometryError` and
:class:`CalibrationError` to exit code 2 and :class:`BudgetExceededError` to
exit code 3.
"""


class OpenVlcError(Exception):
    """Base class of all open-VLC errors."""


class ConfigurationError(OpenVlcError, ValueError):
    """Invalid experiment, scheme or grid parameters.

    Parameters
    ----------
    message: str
        Human readable description.
    field: str, optional
        Dotted path of the offending config field, e.g.
        ``transmitter.half_power_semiangle``.
    """

    def __init__(self, message, field=None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class GeometryError(OpenVlcError, ValueError):
    """Degenerate geometry, e.g. coincident emitter and detector."""


class CalibrationError(OpenVlcError, ValueError):
    """Noise calibration is impossible, e.g. for an all-zero channel."""


class BudgetExceededError(OpenVlcError, RuntimeError):
    """An exhaustive search would exceed its enumeration budget."""
