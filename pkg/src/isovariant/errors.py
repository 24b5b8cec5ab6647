"""Exception types raised across the package."""


class IsovariantError(Exception):
    pass


class GroupTableError(IsovariantError, ValueError):
    """Malformed multiplication table."""


class NonAssociativeTable(GroupTableError):
    pass


class NoIdentity(GroupTableError):
    pass


class NoInverse(GroupTableError):
    pass


class NotASubgroup(IsovariantError, ValueError):
    pass


class ParentMismatch(IsovariantError, ValueError):
    pass


class InvalidChain(IsovariantError, ValueError):
    pass


class NotComposable(IsovariantError, ValueError):
    pass


class InvalidMorphism(IsovariantError, ValueError):
    pass


class BadCoordinates(IsovariantError, ValueError):
    pass


class BadInclusion(IsovariantError, ValueError):
    pass


class ChainMismatch(IsovariantError, ValueError):
    pass


class InvalidComplex(IsovariantError, ValueError):
    """A G-semi-simplicial set violates a simplicial identity or the action laws."""


class NotClosedUnderAction(InvalidComplex):
    pass


class NotClosedUnderFaces(InvalidComplex):
    pass


class InvalidMap(IsovariantError, ValueError):
    pass


class NotALinkMap(IsovariantError, ValueError):
    """An isovariant map between linking simplices that has no (iota, gamma) label."""


class SearchBudgetExceeded(IsovariantError, RuntimeError):
    pass


class NonFunctorialDiagram(IsovariantError, ValueError):
    pass


class NotIsovariantAttachment(IsovariantError, ValueError):
    pass


class NotIsovariantLeg(IsovariantError, ValueError):
    pass
