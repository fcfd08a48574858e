"""Exception types shared across the library."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed expression text, unknown identifier, or unknown function.

    position is a byte offset into the source string.
    """

    def __init__(self, position: int, message: str):
        super().__init__(f"{message} (at byte {position})")
        self.position = position
        self.message = message


class DomainError(ArithmeticError):
    """Evaluation left the domain of a real-valued operation.

    Raised on log of a non-positive value, sqrt of a negative value,
    division by exact zero, zero raised to a negative power, and range
    overflow in the math library.  point, when present, is the variable
    binding at which evaluation failed.
    """

    def __init__(self, message: str, point: dict[str, float] | None = None):
        text = message if point is None else f"{message} at point {point}"
        super().__init__(text)
        self.message = message
        self.point = dict(point) if point is not None else None


class SingularFrame(ValueError):
    """The frame matrix is (numerically) non-invertible at a sample point."""

    def __init__(self, message: str, point: dict[str, float] | None = None):
        text = message if point is None else f"{message} at point {point}"
        super().__init__(text)
        self.message = message
        self.point = dict(point) if point is not None else None


class DegenerateMetric(ValueError):
    """The constant pairing matrix has zero determinant."""


class PreconditionViolated(ValueError):
    """An operation was called outside its documented preconditions."""


class EmptyInput(ValueError):
    """A sample collection that must be nonempty was empty."""


class InputError(ValueError):
    """A CLI input file is malformed or inconsistent."""
