"""Shared failure types for enumeration and search budgets."""


class BudgetExceededError(RuntimeError):
    """An enumeration or search outgrew its configured budget.

    Carries enough context to let callers report a truncated result
    instead of a silently wrong one.
    """

    def __init__(self, kind: str, limit: int, attempted: int, context: str = ""):
        self.kind = kind
        self.limit = limit
        self.attempted = attempted
        self.context = context
        msg = f"{kind} budget exceeded: needed {attempted}, limit {limit}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class ConfigError(ValueError):
    """A configuration document failed validation; the message names the element."""
