"""Core configuration, errors and exit codes."""
from .config import Settings, load_settings, settings
from .errors import (
    InvalidSpecError,
    InvariantError,
    ListParseError,
    OracleTooLargeError,
    PreconditionError,
    SubcheckError,
)

__all__ = [
    "Settings",
    "settings",
    "load_settings",
    "SubcheckError",
    "PreconditionError",
    "InvalidSpecError",
    "OracleTooLargeError",
    "ListParseError",
    "InvariantError",
]
