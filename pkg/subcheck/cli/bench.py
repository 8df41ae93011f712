"""``subcheck bench``: time the checkers on complete coherent lists."""
import logging
from pathlib import Path
from typing import List

import click

from subcheck.core.errors import InvalidSpecError
from subcheck.core.sysexits import EX_OK
from subcheck.models import Algorithm
from subcheck.services.bench_service import BenchService
from subcheck.services.checker_service import CheckerService
from subcheck.services.oracle_service import OracleService

logger = logging.getLogger(__name__)


def parse_sizes(value: str) -> List[int]:
    """``"8,9,10"`` or ``"8-11"`` to a list of universe sizes."""
    sizes: List[int] = []
    try:
        for part in value.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                low, high = (int(bound) for bound in part.split("-", 1))
                sizes.extend(range(low, high + 1))
            else:
                sizes.append(int(part))
    except ValueError:
        raise InvalidSpecError(f"cannot parse sizes {value!r}; expected e.g. 8,9,10 or 8-11")
    if not sizes:
        raise InvalidSpecError("no sizes given")
    if any(size < 0 for size in sizes):
        raise InvalidSpecError(f"sizes must be non-negative, got {value!r}")
    return sizes


def parse_algorithms(value: str) -> List[Algorithm]:
    algorithms: List[Algorithm] = []
    for name in value.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            algorithm = Algorithm(name)
        except ValueError:
            choices = ", ".join(a.value for a in Algorithm)
            raise InvalidSpecError(f"unknown algorithm {name!r} (choose from {choices})")
        if algorithm not in algorithms:
            algorithms.append(algorithm)
    if not algorithms:
        raise InvalidSpecError("no algorithms selected")
    return algorithms


@click.command("bench", short_help="Benchmark the checkers")
@click.option("-m", "sizes", default="8,9,10", show_default=True,
              help="Universe sizes, comma separated or as a range (8-11).")
@click.option("--algorithms", default="fast,naive", show_default=True,
              help="Comma separated algorithms: fast, naive, brute.")
@click.option("--reps", type=int, default=None, help="Timed repetitions per algorithm and size.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Write rows to this file instead of stdout.")
@click.option("--no-warmup", is_flag=True, default=False, help="Keep the first run of each series.")
@click.pass_context
def bench(ctx, sizes, algorithms, reps, seed, csv_path, no_warmup):
    """
    Time each algorithm on one complete coherent list per size (N = 2^m)
    and emit CSV rows. Exits 70 if the algorithms disagree on a verdict.
    """
    settings = ctx.obj
    size_list = parse_sizes(sizes)
    algorithm_list = parse_algorithms(algorithms)
    reps = settings.bench_reps if reps is None else reps
    warmup = settings.bench_warmup and not no_warmup

    checker = CheckerService(oracle=OracleService(oracle_max=settings.oracle_max))
    service = BenchService(checker, max_complete_m=settings.max_complete_m)
    logger.info(
        f"Benchmarking {','.join(a.value for a in algorithm_list)} on m={size_list} "
        f"reps={reps} warmup={warmup}"
    )
    rows = service.run(size_list, algorithm_list, reps=reps, seed=seed, warmup=warmup)

    if csv_path:
        path = Path(csv_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as stream:
            service.write_csv(rows, stream)
    else:
        click.echo(service.to_csv(rows), nl=False)

    for algorithm, by_n in service.medians(rows).items():
        summary = ", ".join(f"N={n}: {median / 1e6:.3f} ms" for n, median in sorted(by_n.items()))
        click.echo(f"{algorithm.value} medians: {summary}", err=True)
    for algorithm, slope in service.slopes(rows).items():
        click.echo(f"{algorithm.value} log-log slope vs N: {slope:.2f}", err=True)
    ctx.exit(EX_OK)
