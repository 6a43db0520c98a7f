"""Exception hierarchy shared across the package."""


class AtspError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(AtspError, ValueError):
    """Structurally invalid cost matrix, parameter, or instance spec."""


class SizeLimitError(AtspError, ValueError):
    """An exact oracle was asked to run above its configured size limit."""


class NotAlternatingError(AtspError, ValueError):
    """A 2n-vertex cycle does not decompose into city/ghost pairing steps."""


class SoundnessError(AtspError, RuntimeError):
    """An internal soundness invariant failed (oracle <= final <= bound).

    This is never a property of the input; it always indicates a bug in the
    pipeline itself, which is why the CLI maps it to a dedicated exit code.
    """


class TsplibError(AtspError, ValueError):
    """Base class for TSPLIB parse failures."""


class UnsupportedFormatError(TsplibError):
    """The file is valid TSPLIB but not an EXPLICIT/FULL_MATRIX ATSP."""


class MalformedError(TsplibError):
    """The file does not follow the TSPLIB structure we rely on."""


class NonIntegerError(TsplibError):
    """An edge weight token is not an integer."""
