"""Service layer initialization."""
from .checker_service import checker_service
from .oracle_service import oracle_service
from .listfile_service import listfile_service

__all__ = [
    "checker_service",
    "oracle_service",
    "listfile_service",
]
