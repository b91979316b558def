"""Exception types shared across the package."""


class InvalidSubsetError(ValueError):
    """An edge set is not contained in the live edges of a graph."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(ValueError):
    """A structural precondition (bipolarity, uniactivity, ...) does not hold."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured cap."""


class InvariantError(RuntimeError):
    """A property guaranteed by the theory failed; this signals a bug."""
