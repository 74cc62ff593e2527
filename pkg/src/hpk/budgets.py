"""Enumeration budgets shared by the brute-force searches.

Every potentially explosive search in the package (horn filling, natural
isomorphism search, 2-cell rewriting, lifting) charges work units against a
budget.  Running out is a distinguished outcome, never a wrong answer: the
search raises :class:`BudgetExceeded` and callers surface it loudly.

The default budgets can be overridden globally with the ``HPK_BUDGET``
environment variable (a single integer applied to all searches).
"""

import os

DEFAULT_FILLER_BUDGET = 10**6
DEFAULT_REWRITE_BUDGET = 10**5
DEFAULT_ISO_SEARCH_BUDGET = 10**6
DEFAULT_LIFT_BUDGET = 10**6


class BudgetExceeded(Exception):
    """A bounded search ran out of budget before reaching a verdict."""

    def __init__(self, what, budget):
        super().__init__(f"{what}: enumeration budget of {budget} exceeded")
        self.what = what
        self.budget = budget


def env_budget(default):
    """Return the budget to use, honouring the HPK_BUDGET override."""
    raw = os.environ.get("HPK_BUDGET")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"HPK_BUDGET must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"HPK_BUDGET must be positive, got {value}")
    return value


class Meter:
    """Counts work units and raises once the budget is exhausted."""

    def __init__(self, what, budget):
        self.what = what
        self.budget = budget
        self.used = 0

    def tick(self, amount=1):
        self.used += amount
        if self.used > self.budget:
            raise BudgetExceeded(self.what, self.budget)
