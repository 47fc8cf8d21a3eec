"""Exception hierarchy and search-budget configuration."""

import os

DEFAULT_BUDGET = 10**6


class AdvNCGError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraphError(AdvNCGError, ValueError):
    pass


class InvalidTargetError(InvalidGraphError):
    """A strategy names the agent itself or a node outside ``0..n-1``."""


class CapExceededError(InvalidGraphError):
    """A node pair would carry more parallel edges than the multiplicity cap."""


class NotOwnerError(AdvNCGError, ValueError):
    """An agent tried to remove an edge it does not own."""


class BudgetExceededError(AdvNCGError):
    """An exhaustive search would enumerate more candidates than allowed."""

    def __init__(self, needed, budget):
        super().__init__(f"search space of {needed} candidates exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class PreconditionError(AdvNCGError, ValueError):
    """An operation was called outside its domain."""


class NotTwoEdgeConnectedError(PreconditionError):
    pass


class NotATwoCutEdgeError(PreconditionError):
    pass


class InfeasibleError(AdvNCGError):
    pass


class WindowEmptyError(PreconditionError):
    """No edge price satisfies the best-response window for this edge count."""


class ParseError(AdvNCGError, ValueError):
    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


def search_budget(budget=None):
    """Resolve a search budget: explicit value, else ``$ADVNCG_BUDGET``, else 10**6."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("ADVNCG_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def check_budget(needed, budget=None):
    limit = search_budget(budget)
    if needed > limit:
        raise BudgetExceededError(needed, limit)
    return limit
