"""``subcheck check``: decide substitutability of a list file."""
import logging
import time

import click

from subcheck.core.sysexits import EX_NOT_COHERENT, EX_NOT_SUBSTITUTABLE, EX_OK
from subcheck.models import Algorithm, CheckerMode, Outcome, PreferenceList, ReportJson, Verdict
from subcheck.services.checker_service import CheckerService
from subcheck.services.choice_service import prune_incoherent
from subcheck.services.listfile_service import listfile_service
from subcheck.services.oracle_service import OracleService

logger = logging.getLogger(__name__)

EXIT_CODES = {
    Outcome.SUBSTITUTABLE: EX_OK,
    Outcome.NOT_SUBSTITUTABLE: EX_NOT_SUBSTITUTABLE,
    Outcome.NOT_COHERENT: EX_NOT_COHERENT,
}


def render_report(plist: PreferenceList, verdict: Verdict, report: ReportJson, pruned: int) -> str:
    """Human-readable form of a check result."""
    universe = plist.universe
    fmt = universe.format_set
    lines = [f"verdict: {report.verdict.value.replace('_', ' ')}"]
    mode = f" ({report.mode.value} mode)" if report.algorithm == Algorithm.FAST else ""
    lines.append(f"algorithm: {report.algorithm.value}{mode}")
    appended = " (empty set appended)" if plist.empty_appended else ""
    lines.append(f"universe: {plist.m} alternatives, N = {plist.n}{appended}")
    if pruned:
        lines.append(f"pruned: {pruned} unreachable member(s) removed before checking")

    if verdict.incoherent_pair is not None:
        i, j = verdict.incoherent_pair
        lines.append(
            f"coherent: no (rank {i} {fmt(plist.masks[i])} is contained in rank {j} {fmt(plist.masks[j])})"
        )
    else:
        lines.append("coherent: yes")
        if verdict.complete is None:
            lines.append("complete: not checked")
        elif verdict.complete:
            lines.append("complete: yes")
        else:
            failure = verdict.incompleteness
            need = failure.required if failure.required is not None else "more than N"
            lines.append(
                f"complete: no (rank {failure.rank} {fmt(plist.masks[failure.rank])}: "
                f"d_X = {failure.d_x}, need {need})"
            )

    if verdict.witness is not None:
        w = verdict.witness
        lines.append(
            f"witness: X = {fmt(plist.masks[w.x_rank])} (rank {w.x_rank}), "
            f"Y = {fmt(plist.masks[w.y_rank])} (rank {w.y_rank}), x = {universe.alternatives[w.x_elem]}"
        )
    if verdict.violation is not None:
        v = verdict.violation
        x = universe.alternatives[v.x_elem]
        lines.append(f"violation: A = {fmt(v.a)} ⊆ B = {fmt(v.b)}, {x} ∈ f(B) but {x} ∉ f(A)")
    lines.append(f"elapsed: {report.elapsed_ns / 1e6:.3f} ms")
    return "\n".join(lines)


@click.command("check", short_help="Check a preference list for substitutability")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--algorithm", type=click.Choice([a.value for a in Algorithm]), default=None,
              help="Checker to run (default from SUBCHECK_DEFAULT_ALGORITHM, else fast).")
@click.option("--mode", type=click.Choice([m.value for m in CheckerMode]), default=None,
              help="figure1 stops at the completeness test; witness always searches for a witness.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Print the JSON report.")
@click.option("--quiet", is_flag=True, default=False, help="Suppress the human-readable report.")
@click.option("--prune", is_flag=True, default=False,
              help="Drop members that can never be chosen before checking.")
@click.pass_context
def check(ctx, file, algorithm, mode, as_json, quiet, prune):
    """
    Check FILE and exit with 0 (substitutable), 1 (not substitutable) or
    2 (not coherent).
    """
    settings = ctx.obj
    algorithm = Algorithm(algorithm or settings.default_algorithm)
    mode = CheckerMode(mode or settings.default_mode)

    plist = listfile_service.read(file)
    pruned = 0
    if prune:
        pruned_list = prune_incoherent(plist)
        pruned = plist.n - pruned_list.n
        plist = pruned_list

    checker = CheckerService(oracle=OracleService(oracle_max=settings.oracle_max)) \
        if algorithm == Algorithm.BRUTE else CheckerService()
    started = time.perf_counter_ns()
    verdict = checker.check(plist, algorithm, mode)
    elapsed = time.perf_counter_ns() - started
    logger.info(f"{file}: {verdict.outcome.value} via {algorithm.value} in {elapsed / 1e6:.3f} ms")

    report = ReportJson.from_verdict(plist, verdict, mode, elapsed)
    if as_json:
        click.echo(report.model_dump_json())
    elif not quiet:
        click.echo(render_report(plist, verdict, report, pruned))

    ctx.exit(EXIT_CODES[verdict.outcome])
