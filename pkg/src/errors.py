"""
Exception hierarchy.

Every error is a ValueError so callers that only care about "bad input"
can catch that.
"""


class SigmaError(ValueError):
    """Base class for all toolkit errors."""


class EmptyGroundSet(SigmaError):
    """A ground set or label sequence with no points."""


class GroundSetMismatch(SigmaError):
    """Two operands live on ground sets of different sizes."""

    def __init__(self, expected: int, actual: int, what: str = "operand") -> None:
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{what} is over a ground set of size {actual}, expected {expected}"
        )


class PointOutOfRange(SigmaError):
    """A point index outside 0..size-1."""

    def __init__(self, point: int, size: int) -> None:
        self.point = point
        self.size = size
        super().__init__(f"point {point} is out of range for a ground set of size {size}")


class CapacityExceeded(SigmaError):
    """A ground set larger than the configured capacity."""

    def __init__(self, size: int, limit: int) -> None:
        self.size = size
        self.limit = limit
        super().__init__(f"ground set of size {size} exceeds the capacity limit {limit}")


class InvalidPartition(SigmaError):
    """Labels or blocks that do not describe a partition."""


class NotInProduct(SigmaError):
    """A product-space set that is not a member of the requested product."""


class ProblemFileError(SigmaError):
    """A problem file that does not parse or violates its schema."""

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


__all__ = [
    "SigmaError",
    "EmptyGroundSet",
    "GroundSetMismatch",
    "PointOutOfRange",
    "CapacityExceeded",
    "InvalidPartition",
    "NotInProduct",
    "ProblemFileError",
]
