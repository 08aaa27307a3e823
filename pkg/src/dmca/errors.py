"""Exception hierarchy shared by the kernel, generator, harness and CLI."""

from __future__ import annotations

__all__ = [
    "DmcaError",
    "EmptySeries",
    "NonFiniteInput",
    "LengthMismatch",
    "InvalidWindow",
    "WindowTooLarge",
    "EvenCenteredWindow",
    "DegenerateVariance",
    "InvalidParameter",
    "EmptySample",
    "InvalidGridCell",
    "AllReplicationsDegenerate",
    "ConfigError",
    "ParseError",
]


class DmcaError(ValueError):
    """Base class for every error raised by this package."""


class EmptySeries(DmcaError):
    pass


class NonFiniteInput(DmcaError):
    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"non-finite value {value!r} at index {index}")


class LengthMismatch(DmcaError):
    pass


class InvalidWindow(DmcaError):
    """Window length or moving-average type outside the accepted set."""


class WindowTooLarge(InvalidWindow):
    pass


class EvenCenteredWindow(InvalidWindow):
    pass


class DegenerateVariance(DmcaError):
    """A residual series carries no variation, so the coefficient is undefined."""


class InvalidParameter(DmcaError):
    pass


class EmptySample(DmcaError):
    pass


class InvalidGridCell(DmcaError):
    pass


class AllReplicationsDegenerate(DmcaError):
    pass


class ConfigError(DmcaError):
    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class ParseError(DmcaError):
    def __init__(self, row: int, column: int | None, reason: str):
        self.row = row
        self.column = column
        self.reason = reason
        where = f"row {row}" if column is None else f"row {row}, column {column}"
        super().__init__(f"{where}: {reason}")
