"""Exception hierarchy.

Every error raised by the library derives from :class:`SmiError`, which is
itself a ``ValueError`` so callers that only care about bad input can catch
the builtin.
"""


class SmiError(ValueError):
    """Base class for all library errors."""


class EmptyPartition(SmiError):
    pass


class NonFiniteCoordinate(SmiError):
    pass


class DimensionMismatch(SmiError):
    pass


class IndexOutOfRange(SmiError):
    pass


class DuplicateMember(SmiError):
    pass


class EmptySubset(SmiError):
    pass


class AlreadyMember(SmiError):
    pass


class EmptyTargetSet(SmiError):
    pass


class LengthMismatch(SmiError):
    pass


class TooFewSamples(SmiError):
    pass


class InvalidConfig(SmiError):
    pass


class InsufficientPartition(SmiError):
    pass


class BudgetTooLarge(SmiError):
    pass


class InstanceTooLarge(SmiError):
    pass
