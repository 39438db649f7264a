"""Exception types shared across the package."""


class GeometryError(ValueError):
    """A geometric domain error: input outside an operation's domain."""


class PreconditionError(GeometryError):
    """A stated precondition does not hold; the result would be meaningless
    rather than false."""


class IterationLimitError(RuntimeError):
    """A construction exceeded its termination guard."""


class DriftBoundError(RuntimeError):
    """A shadowing walk violated its per-segment error budget."""


class TargetFormatError(ValueError):
    """A target-set description file is malformed or inconsistent."""
