"""Exception hierarchy.

Every error the library raises deliberately derives from
EnstrophyBoundsError, so callers can catch one type at the boundary. The CLI
maps subclasses to exit codes (see cli.py).
"""


class EnstrophyBoundsError(Exception):
    """Base class for all deliberate errors raised by this package."""


class MissingKey(EnstrophyBoundsError):
    """A required parameter key is absent from the input mapping."""


class InvalidRegime(EnstrophyBoundsError):
    """Parameter values outside the range the theory covers."""


class OutsideDomain(EnstrophyBoundsError):
    """A curve was evaluated at an abscissa outside its domain of validity."""


class NoBracket(EnstrophyBoundsError):
    """Root finding could not establish a sign change."""


class NonConvergence(EnstrophyBoundsError):
    """An iteration hit its ceiling before reaching tolerance."""


class CancellationLoss(EnstrophyBoundsError):
    """A subtraction lost more significant digits than the caller allowed."""


class FieldBlowup(EnstrophyBoundsError):
    """An integrated field left the trusted range (slope or value exploded)."""


class RegimeViolation(EnstrophyBoundsError):
    """A derived quantity violates a structural assumption of the bound."""


class AssumptionViolated(EnstrophyBoundsError):
    """Forcing data fails an applicability condition of the estimate."""


class EtaTooSmall(EnstrophyBoundsError):
    """The barrier-steepness parameter is below its admissible minimum."""
