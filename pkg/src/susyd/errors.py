"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain where a construction is defined."""


class ConvergenceError(RuntimeError):
    """The numerical oracle failed to bracket or converge on a level."""
