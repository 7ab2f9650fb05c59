"""Exception types raised across the package."""


class InvalidArgument(ValueError):
    """An argument is outside the documented domain of an operation."""


class IncompatibleSplits(ValueError):
    """Two splits cannot coexist in one tree (their boundary divisors are disjoint)."""

    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"incompatible splits: {a} and {b}")


class DegenerateStratum(ValueError):
    """A skeleton point carries a zero weight on one of its listed splits."""


class Unsupported(ValueError):
    """The operation is only defined for other values of n."""
