"""Shared exception types with a small, fixed taxonomy.

DomainError      invalid mathematical input (bad argument, not a subgroup, ...)
UsageError       malformed user-facing input (CLI specs, unknown names)
ResourceLimitError   a configurable size cap was exceeded
ConsistencyError     an internal cross-check failed; always indicates a bug
"""


class DomainError(ValueError):
    pass


class UsageError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    pass


class ConsistencyError(AssertionError):
    pass
