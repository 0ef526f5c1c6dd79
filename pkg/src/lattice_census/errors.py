"""Exception types shared across the package."""


class LatticeCensusError(Exception):
    """Base class for all package errors."""


class InvalidInput(LatticeCensusError, ValueError):
    pass


class Infeasible(LatticeCensusError):
    """A construction's feasibility condition fails for the given parameters.

    ``minimal`` carries the smallest feasible target when one is known.
    """

    def __init__(self, message: str, minimal: int | None = None):
        super().__init__(message)
        self.minimal = minimal


class AssemblyMismatch(LatticeCensusError):
    """A constructed object violates one of its asserted postconditions."""


class BudgetExceeded(LatticeCensusError):
    pass


class SplitConditionUnmet(LatticeCensusError):
    pass
