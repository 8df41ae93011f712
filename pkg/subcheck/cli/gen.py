"""``subcheck gen``: write a seeded instance as a list file."""
import logging

import click

from subcheck import __version__
from subcheck.core.errors import InvalidSpecError, PreconditionError
from subcheck.core.sysexits import EX_OK
from subcheck.models import GenKind
from subcheck.services.generator_service import PRNG_NAME, build_spec, generate, mutate_drop
from subcheck.services.listfile_service import listfile_service

logger = logging.getLogger(__name__)


@click.command("gen", short_help="Generate a preference list")
@click.argument("kind", type=click.Choice([k.value for k in GenKind]))
@click.option("-m", "m", type=int, required=True, help="Universe size.")
@click.option("-q", "q", type=int, default=None, help="Capacity (responsive only).")
@click.option("-n", "n", type=int, default=None, help="Number of members (random_coherent only).")
@click.option("--seed", type=int, default=0, show_default=True, help="PRNG seed, 0 <= seed < 2^64.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Output file; stdout when omitted.")
@click.option("--mutate-drop", "drop", is_flag=True, default=False,
              help="Drop a seeded member that has an earlier superset, making the list incomplete.")
@click.pass_context
def gen(ctx, kind, m, q, n, seed, output, drop):
    """Generate a KIND instance; the same options always give the same bytes."""
    spec = build_spec(kind=kind, m=m, q=q, n=n, seed=seed)
    plist = generate(spec, max_complete_m=ctx.obj.max_complete_m)

    comments = [
        f"generated by subcheck {__version__}",
        f"spec: {spec.describe()}",
        f"prng: {PRNG_NAME}",
    ]
    if drop:
        before = plist.n
        try:
            plist = mutate_drop(plist, seed=seed)
        except PreconditionError as e:
            raise InvalidSpecError(f"cannot mutate {spec.describe()}: {e}") from e
        comments.append(f"mutation: dropped one member ({before} -> {plist.n} members)")

    if output:
        listfile_service.write(output, plist, comments)
        logger.info(f"Wrote {plist.n} members to {output}")
    else:
        click.echo(listfile_service.format(plist, comments), nl=False)
    ctx.exit(EX_OK)
