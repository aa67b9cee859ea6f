"""Exception hierarchy shared by all equiosc modules."""


class EquioscError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EquioscError, ValueError):
    """An evaluation point lies outside the function's domain."""


class SchemaError(EquioscError, ValueError):
    """A JSON document does not match the problem schema."""


class AdmissibilityError(EquioscError, ValueError):
    """A field or weight is finite/non-zero at too few points for the given n."""


class PreconditionError(EquioscError, ValueError):
    """An operation's precondition is violated (ordering, step size, ...)."""


class RegularityError(EquioscError, ValueError):
    """A node system lies outside the regularity set required here."""


class HypothesisError(EquioscError, ValueError):
    """The kernel flags do not satisfy the hypotheses of the requested solve."""


class ConvergenceError(EquioscError, RuntimeError):
    """An iterative solve exhausted its iteration budget."""


class BudgetError(EquioscError, RuntimeError):
    """A brute-force search would exceed its evaluation budget."""
