"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class InvariantError(RuntimeError):
    """A divisibility or uniqueness invariant failed.

    These encode theorems about the line configuration, so a violation
    means either a bug or a false claim; the CLI maps it to exit code 3.
    """
