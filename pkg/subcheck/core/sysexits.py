"""Process exit codes (BSD sysexits plus the checker verdict codes)."""

EX_OK = 0

# Verdicts
EX_NOT_SUBSTITUTABLE = 1
EX_NOT_COHERENT = 2

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_SOFTWARE = 70
