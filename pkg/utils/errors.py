"""
Error types shared by the RepLab packages.
"""

from typing import Any, Optional


class LabError(Exception):
    """Base class for laboratory errors."""


class DimensionCapError(LabError, ValueError):
    """Raised when d^n exceeds the configured dimension cap."""


class BasisConstructionError(LabError, RuntimeError):
    """Raised when a Schur basis fails a numerical consistency check."""


class IntertwinerError(LabError, RuntimeError):
    """Raised when no unique conjugation intertwiner can be found."""


class ProtocolError(LabError, RuntimeError):
    """Raised by a protocol run; carries the partial transcript if one exists."""

    def __init__(self, message: str, transcript: Optional[Any] = None):
        super().__init__(message)
        self.transcript = transcript
