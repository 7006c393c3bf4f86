"""Exception hierarchy shared by all mveff modules."""


class MveffError(Exception):
    """Base class for all library errors."""


class ChainMismatch(MveffError):
    """Two truth values from different chains were combined."""


class IndexOutOfRange(MveffError):
    """A threshold index i is outside 1..n."""


class OutOfUnitInterval(MveffError):
    """A rational outside [0, 1] was rounded to a chain."""


class NotAnAlgebra(MveffError):
    """Operation tables of a claimed finite MV-algebra are not closed."""


class FormulaSyntaxError(MveffError):
    """Parse failure; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownPlayer(MveffError):
    """A coalition literal names a player outside 1..k."""


class DialectViolation(MveffError):
    """An [O] modality appeared where only the O-free language is allowed."""


class UnknownProposition(MveffError):
    """A formula mentions a proposition the valuation does not cover."""


class EmptyProfileSet(MveffError):
    """A social choice correspondence was given no preference profiles."""


class BudgetExceeded(MveffError):
    """A configured enumeration budget was exceeded."""


class NotPlayableInput(MveffError):
    """An operation requiring a playable effectivity function got a non-playable one."""


class NotHomogeneous(MveffError):
    """An operation requiring homogeneity got a non-homogeneous table."""


class NotTrulyPlayable(MveffError):
    """Game-form synthesis requires a truly playable table."""


class SynthesisBudgetExceeded(MveffError):
    """No realizing game form found within the strategy budget (not a refutation)."""


class NotPlayable(MveffError):
    """Filtration requires a playable model."""


class NotStandard(MveffError):
    """Enriched filtration requires a standard model."""


class PremiseViolated(MveffError):
    """The [O]-homogeneity premise of the enriched truth transfer fails."""
