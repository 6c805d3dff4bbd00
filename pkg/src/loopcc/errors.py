"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all loopcc errors."""


class InvalidRank(Error):
    pass


class SizeMismatch(Error):
    pass


class RankMismatch(Error):
    pass


class NotChargeConserving(Error):
    pass


class NotInjective(Error):
    pass


class ZeroGaugeFactor(Error):
    pass


class NotInvertible(Error):
    pass


class ParamMismatch(Error):
    pass


class ConstraintViolated(Error):
    pass


class IndexOutOfRange(Error):
    pass


class FTypeDetected(Error):
    """A rank-2 restriction has the f-type braid form, which admits no
    extension by a symmetric exchange."""


class Unclassifiable(Error):
    """A rank-2 restriction is outside the charge-conserving braid families."""


class NotARepresentation(Error):
    """Input pair fails the defining relations; interrogation refuses it."""


class InconsistentParameters(Error):
    """A well-definedness check failed during interrogation.

    On verified input this signals an internal bug, hence the CLI maps it to
    its own exit code.
    """
