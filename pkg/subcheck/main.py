"""Command-line entry point: logging setup and exit code mapping."""
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from subcheck.cli import cli
from subcheck.core.errors import SubcheckError
from subcheck.core.sysexits import EX_NOINPUT, EX_SOFTWARE, EX_USAGE

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: str, log_file: Optional[str] = None) -> None:
    """Log to stderr, and to ``log_file`` as well when one is configured."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return the process exit code."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="subcheck",
                          standalone_mode=False)
        return result if isinstance(result, int) else 0
    except click.UsageError as e:
        e.show()
        return EX_USAGE
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EX_SOFTWARE
    except SubcheckError as e:
        click.echo(f"subcheck: {e}", err=True)
        return e.exit_code
    except OSError as e:
        click.echo(f"subcheck: {e}", err=True)
        return EX_NOINPUT
    except Exception as e:
        logger.exception(f"Internal error: {e}")
        return EX_SOFTWARE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
