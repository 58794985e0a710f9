"""
Exception types raised across hochdesk. Each carries the CLI exit code it maps to.
"""
from __future__ import annotations

from typing import Any, Dict, Optional


class HochdeskError(Exception):
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"type": type(self).__name__, "message": self.message, "details": self.details}


class InputError(HochdeskError, ValueError):
    """Malformed input: unparsable JSON, scalar or missing field."""

    exit_code = 2


class ValidationFailure(HochdeskError):
    """Input parsed but breaks a structural identity."""

    exit_code = 2


class CapExceeded(HochdeskError):
    exit_code = 3


class WindowUnstable(HochdeskError):
    exit_code = 3


class WindowTooSmall(HochdeskError):
    exit_code = 3
