"""``subcheck info``: structural summary of a list file."""
import click

from subcheck.core.sysexits import EX_OK
from subcheck.models import InfoJson
from subcheck.services.choice_service import check_coherence, check_completeness, prune_incoherent
from subcheck.services.listfile_service import listfile_service


@click.command("info", short_help="Describe a preference list")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, default=False, help="Print the summary as JSON.")
@click.pass_context
def info(ctx, file, as_json):
    """Print size, coherence, completeness and pruned size of FILE."""
    plist = listfile_service.read(file)
    pair = check_coherence(plist)
    report = check_completeness(plist) if pair is None else None
    summary = InfoJson(
        universe_size=plist.m,
        n=plist.n,
        empty_appended=plist.empty_appended,
        coherent=pair is None,
        incoherent_pair=pair,
        complete=report.complete if report else None,
        first_failure=report.first_failure if report else None,
        subset_counts=list(report.per_member_counts) if report else None,
        pruned_n=prune_incoherent(plist).n,
    )

    if as_json:
        click.echo(summary.model_dump_json())
        ctx.exit(EX_OK)

    fmt = plist.universe.format_set
    click.echo(f"universe: {' '.join(plist.universe.alternatives) or '-'} (m = {plist.m})")
    click.echo(f"members: {plist.n}" + (" (empty set appended)" if plist.empty_appended else ""))
    if pair is not None:
        i, j = pair
        click.echo(f"coherent: no (rank {i} {fmt(plist.masks[i])} is contained in rank {j} {fmt(plist.masks[j])})")
    else:
        click.echo("coherent: yes")
        failure = report.first_failure
        if failure is None:
            click.echo("complete: yes")
        else:
            need = failure.required if failure.required is not None else "more than N"
            click.echo(
                f"complete: no (rank {failure.rank} {fmt(plist.masks[failure.rank])}: "
                f"d_X = {failure.d_x}, need {need})"
            )
        for rank, (mask, d_x) in enumerate(zip(plist.masks, report.per_member_counts)):
            click.echo(f"  {rank:>4}  {fmt(mask):<24} d_X = {d_x}")
    click.echo(f"after pruning: {summary.pruned_n} members")
    ctx.exit(EX_OK)
