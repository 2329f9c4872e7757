"""Exception types shared across the package."""


class SupervfError(Exception):
    """Base class for all library errors."""


class InputError(SupervfError, ValueError):
    """Malformed or out-of-range input: bad index, bad JSON, mismatched specs."""


class PreconditionError(SupervfError, ValueError):
    """An operation was invoked outside its documented precondition."""


class UnsupportedModelError(SupervfError, ValueError):
    """The computation is only defined for a restricted family of models."""


class ResourceLimitError(SupervfError, RuntimeError):
    """The model dimension exceeds the configured cap."""


class ConstructionError(SupervfError, RuntimeError):
    """A constrained construction admits no solution for the given data."""


class ConsistencyError(SupervfError, RuntimeError):
    """An internal invariant failed; indicates corrupted input or a bug."""
