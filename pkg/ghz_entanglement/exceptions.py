"""Errors raised by the GHZ entanglement package."""
from __future__ import annotations


class GhzEntanglementError(Exception):
    """Base error for the GHZ entanglement package."""


class InvalidParameter(GhzEntanglementError, ValueError):
    """Error to indicate a scalar argument is outside its allowed range."""


class DimensionMismatch(GhzEntanglementError, ValueError):
    """Error to indicate operands live in spaces of different dimension."""


class DimensionCapExceeded(GhzEntanglementError, ValueError):
    """Error to indicate a dense matrix would exceed the configured cap."""

    def __init__(self, dim: int, cap: int, what: str = "matrix") -> None:
        """Initialize the error."""
        super().__init__(f"{what} dimension {dim} exceeds the configured cap {cap}")
        self.dim = dim
        self.cap = cap


class InvalidStateError(GhzEntanglementError, ValueError):
    """Error to indicate a state violates its invariants."""


class NonHermitianError(InvalidStateError):
    """Error to indicate a matrix is not Hermitian within tolerance."""


class ZeroProbabilityProjection(GhzEntanglementError, ValueError):
    """Error to indicate a projection has (numerically) zero probability."""


class InvalidConfig(GhzEntanglementError, ValueError):
    """Error to indicate the run configuration is invalid."""


class CheckFailed(GhzEntanglementError):
    """Error to indicate a verification check did not hold."""
