"""Exception types shared by every module.

The CLI maps these onto exit statuses, so keep the hierarchy flat.
"""


class PermrandError(Exception):
    """Base class."""


class DescriptorError(PermrandError):
    """A descriptor is malformed or cannot be evaluated at the requested input."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class OutOfDepth(DescriptorError):
    """A finitely specified table was queried beyond its declared depth."""


class PreconditionError(PermrandError, ValueError):
    """An operation was called outside its precondition."""


class BudgetExceeded(PermrandError):
    """A brute-force enumeration would exceed its configured budget."""

    def __init__(self, message, needed=None, budget=None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget
