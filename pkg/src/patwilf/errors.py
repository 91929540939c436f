"""Exception types shared across the engines."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation (e.g. a 312-containing block)."""


class ContractError(Exception):
    """An engine precondition is violated (non-additive statistic, 312 missing, ...)."""


class BudgetError(RuntimeError):
    """A requested computation exceeds the configured enumeration budget."""
