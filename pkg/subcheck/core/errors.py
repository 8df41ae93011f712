"""Exception hierarchy; each class knows the exit code the CLI reports."""
from typing import Optional

from subcheck.core.sysexits import EX_DATAERR, EX_SOFTWARE, EX_USAGE


class SubcheckError(Exception):
    """Base class for all library errors."""

    exit_code = EX_SOFTWARE


class PreconditionError(SubcheckError, ValueError):
    """An operation was called outside its precondition."""


class InvalidSpecError(SubcheckError, ValueError):
    """Invalid generator parameters or option values."""

    exit_code = EX_USAGE


class OracleTooLargeError(InvalidSpecError):
    """Universe exceeds the configured oracle cap."""

    def __init__(self, m: int, oracle_max: int):
        super().__init__(
            f"universe has {m} alternatives but the oracle is capped at {oracle_max} "
            f"(raise SUBCHECK_ORACLE_MAX, at most 16)"
        )
        self.m = m
        self.oracle_max = oracle_max


class ListParseError(SubcheckError):
    """Malformed preference list file."""

    exit_code = EX_DATAERR

    def __init__(self, message: str, line_no: Optional[int] = None, source: str = "<string>"):
        self.message = message
        self.line_no = line_no
        self.source = source
        where = f"{source}:{line_no}" if line_no is not None else source
        super().__init__(f"{where}: {message}")


class InvariantError(SubcheckError, AssertionError):
    """A checked postcondition failed."""
