"""Exception taxonomy for the toolkit.

Every error raised on purpose by this package derives from GroupKitError,
so callers can catch one type at the boundary.
"""


class GroupKitError(Exception):
    """Base class for all toolkit errors."""


class InvalidSpec(GroupKitError):
    """Malformed group description (unknown kind, bad parameters, bad shapes)."""


class NotAGroup(GroupKitError):
    """A multiplication table fails the group axioms."""


class SizeLimitExceeded(GroupKitError):
    """A construction would exceed the configured maximum group order."""


class IndexOutOfRange(GroupKitError):
    """An element index does not lie in range(order)."""


class GroupMismatch(GroupKitError):
    """Operands belong to different group instances."""


class NotASubgroup(GroupKitError):
    """A set that must be a subgroup is not one."""


class ParseError(GroupKitError):
    """An element or subset expression could not be parsed."""


class UnknownSymbol(ParseError):
    """A word uses a symbol that names no generator of the group."""


class ScriptedChoiceInvalid(GroupKitError):
    """A scripted choice is not available at its step, or the script ran out."""


class MidEmpty(GroupKitError):
    """The middle director is empty, so the requested search cannot start."""


class G0NotInMid(GroupKitError):
    """The requested starting element lies outside the middle director."""


class TraceMismatch(GroupKitError):
    """A trace does not replay against the inputs it was supplied with."""


class EnumerationLimitExceeded(GroupKitError):
    """An enumeration produced more results than the configured cap."""
