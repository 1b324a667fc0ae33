"""Exception types raised by the library.

Every error derives from :class:`AcausalError` so callers (and the CLI) can
catch library failures without swallowing unrelated bugs.  Errors that signal
bad caller input also derive from :class:`ValueError`.
"""


class AcausalError(Exception):
    """Base class for all library errors."""


class NumericalFailure(AcausalError):
    """A numerical procedure did not reach its requested accuracy."""


class InvalidImpedance(AcausalError, ValueError):
    pass


class InvalidConstants(AcausalError, ValueError):
    pass


class LightConeSingular(AcausalError, ValueError):
    pass


class DegenerateSeparation(AcausalError, ValueError):
    pass


class CoincidentPoints(AcausalError, ValueError):
    pass


class RegulatorViolation(AcausalError, ValueError):
    pass


class SignalTooShort(AcausalError, ValueError):
    pass


class WindowTooShort(AcausalError, ValueError):
    pass


class KernelShapeMismatch(AcausalError, ValueError):
    pass


class GridMismatch(AcausalError, ValueError):
    pass


class ZeroNorm(AcausalError, ValueError):
    pass


class NotNormalized(AcausalError, ValueError):
    pass


class SuperluminalClassicalLine(AcausalError, ValueError):
    """A line with eps*mu < 1 would carry classical signals faster than c."""


class QuadratureNotConverged(NumericalFailure):
    pass


class InsufficientData(AcausalError, ValueError):
    pass


class BadSweep(AcausalError, ValueError):
    pass


class ZeroState(AcausalError, ValueError):
    pass
