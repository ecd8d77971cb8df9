"""Exception hierarchy. Exit-code mapping lives in the CLI."""


class ObstructkError(Exception):
    """Base class for all library errors."""


class InputError(ObstructkError):
    """Malformed or inconsistent user input."""


class SchemaError(InputError):
    """Document violates the expected schema.

    Carries the path to the offending field, e.g. '$.g[3].edge'.
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class CoefficientMismatchError(InputError):
    """Cochain, group or sequence coefficient systems do not agree."""


class NotACocycleError(InputError):
    """A claimed cocycle has nonzero coboundary; names an offending simplex."""

    def __init__(self, simplex, message="not a cocycle"):
        self.simplex = tuple(simplex)
        super().__init__(f"{message}: delta is nonzero on simplex {self.simplex}")


class AmbiguousLiftError(ObstructkError):
    """Nearest lift is tied (distance exactly 1/2, or zero inner product)."""


class DiscontinuousDataError(ObstructkError):
    """Finite-fiber vertex data jumps inside a connected intersection."""


class CoverTooCoarseError(ObstructkError):
    """Obstruction value is not constant on a triple intersection."""

    def __init__(self, triple, values):
        self.triple = tuple(triple)
        self.values = dict(values)
        super().__init__(
            f"obstruction not constant on triple {self.triple}: {self.values}"
        )


class InternalInvariantError(ObstructkError):
    """A condition the implementation guarantees failed; a defect, not user error."""
