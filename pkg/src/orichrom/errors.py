"""Exception types shared across the toolkit."""


class OrichromError(Exception):
    """Base class for all toolkit errors."""


class InvalidOrder(OrichromError):
    """Requested tournament order does not admit the construction."""


class NotAnArc(OrichromError):
    """The queried ordered pair is not an arc of the tournament."""


class NotDoublyRegular(OrichromError):
    """Operation requires a doubly regular tournament."""


class OddTotal(OrichromError):
    """Configuration model needs an even number of points (d*n even)."""


class RejectionBudgetExceeded(OrichromError):
    """Rejection sampling did not produce a simple graph within the cap."""


class DivisibilityError(OrichromError):
    """Equitable counting requires k to divide n."""


class SizeLimit(OrichromError):
    """Exact enumeration would exceed the configured budget."""


class DomainError(OrichromError):
    """Argument outside the mathematical domain of the formula."""


class NotUnicyclic(OrichromError):
    """Graph has a component with more than one independent cycle."""


class NotTwoRegular(OrichromError):
    """Graph is not a simple 2-regular oriented graph."""


class CoreTooDense(OrichromError):
    """Window core failed the sparsity precondition and the 11-colour fallback."""


class NonPositiveLagrangian(OrichromError):
    """Lagrangian term vanished; the log in the objective is undefined."""
