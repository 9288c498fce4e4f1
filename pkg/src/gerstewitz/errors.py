"""Exception hierarchy shared by all modules."""


class GerstewitzError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(GerstewitzError, ValueError):
    """Two objects that must live in the same R^l do not."""


class UnsupportedRepresentation(GerstewitzError):
    """The requested operation is not available for this set representation."""


class DegenerateGenerators(GerstewitzError, ValueError):
    """Cone generators do not span a full-dimensional cone."""


class InvariantViolation(GerstewitzError):
    """A structural hypothesis (e.g. k in the recession cone of H) fails."""


class PreconditionError(GerstewitzError, ValueError):
    """Caller-supplied data violates an operation's precondition."""


class NotNormalizable(PreconditionError):
    """Direction has zero coordinate sum and cannot be put on the simplex."""
