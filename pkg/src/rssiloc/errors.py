"""Exception types raised across the package."""

from __future__ import annotations


class LocalizationError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInputError(LocalizationError, ValueError):
    """Input is structurally valid but carries no usable information
    (empty error list, calibration set without two distinct distances, ...)."""


class InsufficientAnchorsError(LocalizationError, ValueError):
    """Fewer anchors than the requested solve needs."""


class SingularGeometryError(LocalizationError):
    """Anchor geometry admits no position solution (collinear anchors).

    Carries the ids of the offending anchors when they are known.
    """

    def __init__(self, message: str, anchor_ids: tuple[str, ...] = ()):
        super().__init__(message)
        self.anchor_ids = tuple(anchor_ids)


class SchemaError(LocalizationError, ValueError):
    """A file does not match its expected schema (missing column, empty file)."""


class RowParseError(SchemaError):
    """A data row could not be parsed; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
