"""Exception hierarchy.

Every error raised on bad input derives from :class:`FactorSpaceError`
(itself a ``ValueError``), so callers such as the CLI can catch one type.
"""


class FactorSpaceError(ValueError):
    """Base class for input and precondition errors."""


class IndexSetMismatch(FactorSpaceError):
    def __init__(self, msg="index-set mismatch"):
        super().__init__(msg)


class EmptyFamily(FactorSpaceError):
    def __init__(self, msg="empty family"):
        super().__init__(msg)


class DomainError(FactorSpaceError):
    """Partial-state domain violation (restriction outside domain, overlapping glue)."""


class StateSpaceTooLarge(FactorSpaceError):
    """State count exceeds the guard for dense tables or subspaces."""


class NotPositive(FactorSpaceError):
    def __init__(self, msg="not strictly positive"):
        super().__init__(msg)


class NotMember(FactorSpaceError):
    """A table failed a required factorisation-space membership precondition."""

    def __init__(self, msg, residual):
        super().__init__(msg)
        self.residual = residual


class FactorMismatch(FactorSpaceError):
    """Two factor systems (or a system and a table) disagree pointwise."""


class GraphError(FactorSpaceError):
    """Unknown vertex, self-loop or adjacent pair passed where forbidden."""


class TooManyVariables(FactorSpaceError):
    """An exact combinatorial routine was asked for more variables than it supports."""
