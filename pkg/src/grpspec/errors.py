"""Exception types shared across the package."""


class GrpSpecError(Exception):
    pass


class InvalidInput(GrpSpecError, ValueError):
    """An argument is outside the domain of an operation."""


class PreconditionError(InvalidInput):
    """A required hypothesis does not hold for the given parameters."""


class ComputationBudgetExceeded(GrpSpecError, RuntimeError):
    """Base class for failures caused by a configured effort limit."""


class FactoringBudgetExceeded(ComputationBudgetExceeded):
    def __init__(self, n, cofactor):
        super().__init__(f"could not split cofactor {cofactor} of {n} within budget")
        self.n = n
        self.cofactor = cofactor


class EnumerationLimitExceeded(ComputationBudgetExceeded):
    pass


class SizeLimitExceeded(ComputationBudgetExceeded):
    pass
