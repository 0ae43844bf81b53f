"""Exception types shared across the package.

The split mirrors how callers react: bad user input, a violated call
contract, a blown enumeration budget, or an internal guarantee that failed
(always a bug or a misuse upstream).
"""


class InputError(ValueError):
    """Malformed input: bad vertex ids, self-loops, unparsable files, mismatched traces."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold for the given arguments."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget; never downgraded silently."""


class InvariantViolationError(RuntimeError):
    """An internal guarantee failed; indicates a bug or inconsistent inputs."""


class ResidualInfeasibleError(InvariantViolationError):
    """A residual instance built while lifting a reduction step has no solution.

    Carries the offending step; signals either demand/list-size ratio below
    the reduction parameter or a trace that does not match the graph.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
