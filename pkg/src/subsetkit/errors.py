"""Exception types shared across the solver modules."""


class SolverError(Exception):
    """Base class for solver failures."""


class BudgetExceeded(SolverError):
    """An oracle or low-space solver refused to run past its work budget."""


class VerificationError(SolverError):
    """An internal consistency check failed (output would be untrustworthy)."""


class InterpolationError(VerificationError):
    """Sparse interpolation exhausted every substitution candidate."""
