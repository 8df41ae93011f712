"""Command group; each subcommand lives in its own module."""
import click
import dotenv
from pydantic import ValidationError

from subcheck import POLARITY_NOTE, __version__
from subcheck.core.config import Settings
from subcheck.core.errors import InvalidSpecError


@click.group()
@click.help_option()
@click.version_option(
    version=__version__,
    prog_name="subcheck",
    message=f"%(prog)s %(version)s ({POLARITY_NOTE})",
)
@click.option("-e", "--env-file", default=".env", show_default=True,
              help="Environment file with SUBCHECK_* overrides; ignored if missing.")
@click.option("-v", "--verbose", is_flag=True, default=False, help="Log at DEBUG level.")
@click.pass_context
def cli(ctx, env_file, verbose):
    """
    Decide whether the choice function induced by a strict preference list
    is substitutable, and produce a witness when it is not.
    """
    from subcheck.main import configure_logging

    dotenv.load_dotenv(env_file)
    try:
        settings = Settings()
    except ValidationError as e:
        raise InvalidSpecError(f"invalid configuration: {e.errors()[0]['msg']}") from e

    configure_logging("DEBUG" if verbose else settings.log_level, settings.log_file)
    ctx.obj = settings


from .check import check  # noqa: E402
from .gen import gen  # noqa: E402
from .bench import bench  # noqa: E402
from .info import info  # noqa: E402

cli.add_command(check)
cli.add_command(gen)
cli.add_command(bench)
cli.add_command(info)

__all__ = ["cli"]
