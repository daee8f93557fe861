"""Exception types shared across the package."""


class TreeliftError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(TreeliftError, ValueError):
    """An operation was called with arguments that violate its contract."""


class FormatError(TreeliftError, ValueError):
    """A game file (or other wire input) is malformed."""


class InvariantError(TreeliftError, RuntimeError):
    """An internal invariant that should always hold was violated."""


class LiftBudgetExceeded(TreeliftError, RuntimeError):
    """The lifting budget ran out before the fixed point was reached.

    Carries the partial labeling and the number of lifts performed so far.
    """

    def __init__(self, labeling, lifts):
        super().__init__(f"lift budget exhausted after {lifts} lifts")
        self.labeling = labeling
        self.lifts = lifts
