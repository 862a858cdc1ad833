"""
Domain exceptions.

Every error carries a human readable ``detail`` and the process ``exit_code``
the CLI should return for it: 2 for invalid input or parameters, 1 for
numerical failures.
"""
from typing import Any, Optional

import numpy as np


class WalkrankError(Exception):
    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self) -> str:
        return self.detail


class InvalidInputError(WalkrankError):
    exit_code = 2


class ParseError(InvalidInputError):
    def __init__(self, detail: str, line_number: Optional[int] = None):
        if line_number is not None:
            detail = f"line {line_number}: {detail}"
        super().__init__(detail)
        self.line_number = line_number


class GraphValidationError(InvalidInputError):
    pass


class FormatError(InvalidInputError):
    pass


class DomainError(InvalidInputError):
    """A parameter lies outside its feasible interval."""

    def __init__(self, detail: str, bound: Optional[float] = None):
        super().__init__(detail)
        self.bound = bound


class MismatchError(InvalidInputError):
    pass


class UnsupportedOperationError(InvalidInputError):
    pass


class CapacityError(InvalidInputError):
    pass


class DisconnectedGraphError(InvalidInputError):
    pass


class ConvergenceError(WalkrankError):
    """Iteration cap reached; ``best`` holds the iterate with the smallest residual."""

    def __init__(
        self,
        detail: str,
        best: Optional[np.ndarray] = None,
        iterations: int = 0,
        residual: float = float("inf"),
        estimate: Any = None,
    ):
        super().__init__(detail)
        self.best = best
        self.iterations = iterations
        self.residual = residual
        self.estimate = estimate


class TruncationError(WalkrankError):
    def __init__(self, detail: str, bound: Optional[float] = None):
        super().__init__(detail)
        self.bound = bound
