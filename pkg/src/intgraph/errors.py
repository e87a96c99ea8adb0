"""Exception hierarchy shared across the package.

Two families matter for callers: `ValidationError` (bad input data or a
violated precondition; CLI exit code 2) and `CapExceeded` (a configured
resource limit was hit; CLI exit code 3).
"""


class IntgraphError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(IntgraphError, ValueError):
    """Input data or arguments violate a documented invariant."""


class CapExceeded(IntgraphError, RuntimeError):
    """A configured resource cap was exceeded."""


class ClosureCapExceeded(CapExceeded):
    """Generated group grew past the configured order cap."""


class LatticeCapExceeded(CapExceeded):
    """Subgroup enumeration grew past the configured lattice cap."""


class CosetLimitExceeded(CapExceeded):
    """Coset enumeration needed more cosets than allowed.

    The presentation may define a larger (or infinite) group.
    """


class IsomorphismBudgetExceeded(CapExceeded):
    """Isomorphism backtracking ran out of its node budget.

    This signals "unknown", which is distinct from a negative answer.
    """
