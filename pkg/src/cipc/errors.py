"""Exception hierarchy shared by the library and the command line."""


class CIPCError(Exception):
    """Base class for every error raised by this package."""


class InvalidL(CIPCError, ValueError):
    """Register width outside the supported range."""


class ConfigMismatch(CIPCError, ValueError):
    """Two sketches with different register widths or hash constants."""


class Saturated(CIPCError, ArithmeticError):
    """Every register position is set, so no rightmost zero exists."""


class StateFormatError(CIPCError, ValueError):
    """A serialized sketch could not be decoded."""


class BadMagic(StateFormatError):
    pass


class UnsupportedVersion(StateFormatError):
    pass


class TruncatedPayload(StateFormatError):
    pass


class EmptySamples(CIPCError, ValueError):
    pass


class InsufficientSamples(CIPCError, ValueError):
    pass


class NonPositiveTruth(CIPCError, ValueError):
    pass


class UniverseTooSmall(CIPCError, ValueError):
    pass
