"""Exception hierarchy.

``DomainError`` subclasses signal that the mathematics refuses the input
(no completion, undefined parallel difference, ...).  ``InputError``
subclasses signal malformed input.  The CLI maps the two families to exit
codes 1 and 2.
"""


class GschurError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GschurError):
    pass


class InputError(GschurError, ValueError):
    pass


class DimensionMismatch(InputError):
    pass


class InvalidInput(InputError):
    pass


class NotPositive(DomainError):
    pass


class NotCompletable(DomainError):
    pass


class BlockNotPositive(DomainError):
    pass


class NotExtensible(DomainError):
    pass


class NotDefined(DomainError):
    pass


class NotRepresentable(DomainError):
    pass


class NotDominated(DomainError):
    pass


class RouteDisagreement(DomainError):
    """Independent evaluations of the same quantity disagree.

    This points at a numerical defect, not at a property of the input.
    """
