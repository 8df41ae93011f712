"""Benchmark harness timing the checkers on complete coherent lists."""
import csv
import io
import logging
import time
from typing import Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np

from subcheck.core.config import settings
from subcheck.core.errors import InvalidSpecError, InvariantError
from subcheck.models import Algorithm, BenchRow, CheckerMode, PreferenceList, Verdict
from subcheck.services.checker_service import CheckerService, checker_service
from subcheck.services.generator_service import gen_complete_coherent

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["m", "N", "algorithm", "seed", "rep", "elapsed_ns", "verdict"]


def fit_loglog_slope(points: Sequence[tuple]) -> float:
    """Least-squares slope of log(elapsed) against log(N) for (N, elapsed) points."""
    if len(points) < 2:
        raise InvalidSpecError("a slope needs at least two sizes")
    sizes = np.asarray([n for n, _ in points], dtype=float)
    elapsed = np.maximum(np.asarray([t for _, t in points], dtype=float), 1.0)

    x = np.log(sizes)
    y = np.log(elapsed)
    design = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[1])


class BenchService:
    """Time each algorithm on the same instances and cross-check verdicts."""

    def __init__(self, checker: Optional[CheckerService] = None, max_complete_m: Optional[int] = None):
        self.checker = checker or checker_service
        self.max_complete_m = max_complete_m

    def _time_once(self, plist: PreferenceList, algorithm: Algorithm) -> tuple:
        started = time.perf_counter_ns()
        verdict = self.checker.check(plist, algorithm, CheckerMode.WITNESS)
        return time.perf_counter_ns() - started, verdict

    def run(
        self,
        sizes: Iterable[int],
        algorithms: Sequence[Algorithm],
        reps: Optional[int] = None,
        seed: int = 0,
        warmup: Optional[bool] = None,
    ) -> List[BenchRow]:
        """
        For every m, generate one complete coherent list (N = 2^m), discard a
        warm-up run per algorithm, then time ``reps`` runs.

        Raises InvariantError when the algorithms disagree on an instance.
        """
        reps = settings.bench_reps if reps is None else reps
        warmup = settings.bench_warmup if warmup is None else warmup
        if reps < 1:
            raise InvalidSpecError(f"reps must be at least 1, got {reps}")
        if reps < 5:
            logger.warning(f"Timing with {reps} reps; medians are only reliable from 5 reps up")
        if not algorithms:
            raise InvalidSpecError("no algorithms selected")

        rows: List[BenchRow] = []
        for m in sizes:
            plist = gen_complete_coherent(m, seed, max_m=self.max_complete_m)
            verdicts: Dict[Algorithm, Verdict] = {}
            for algorithm in algorithms:
                if warmup:
                    self._time_once(plist, algorithm)
                for rep in range(reps):
                    elapsed, verdict = self._time_once(plist, algorithm)
                    verdicts.setdefault(algorithm, verdict)
                    rows.append(BenchRow(
                        m=m,
                        N=plist.n,
                        algorithm=algorithm,
                        seed=seed,
                        rep=rep,
                        elapsed_ns=elapsed,
                        verdict=verdict.outcome,
                    ))
                median = float(np.median(
                    [row.elapsed_ns for row in rows if row.m == m and row.algorithm == algorithm]
                ))
                logger.info(f"m={m} N={plist.n} {algorithm.value}: median {median / 1e6:.3f} ms")
            self._check_agreement(m, verdicts)
        return rows

    def _check_agreement(self, m: int, verdicts: Dict[Algorithm, Verdict]) -> None:
        outcomes = {verdict.outcome for verdict in verdicts.values()}
        if len(outcomes) > 1:
            detail = ", ".join(f"{a.value}={v.outcome.value}" for a, v in verdicts.items())
            raise InvariantError(f"algorithms disagree at m={m}: {detail}")
        fast = verdicts.get(Algorithm.FAST)
        naive = verdicts.get(Algorithm.NAIVE)
        if fast is not None and naive is not None and fast.witness != naive.witness:
            raise InvariantError(
                f"fast and naive witnesses differ at m={m}: {fast.witness} vs {naive.witness}"
            )

    @staticmethod
    def medians(rows: Iterable[BenchRow]) -> Dict[Algorithm, Dict[int, float]]:
        """Median elapsed ns per algorithm and N."""
        grouped: Dict[Algorithm, Dict[int, List[int]]] = {}
        for row in rows:
            grouped.setdefault(row.algorithm, {}).setdefault(row.N, []).append(row.elapsed_ns)
        return {
            algorithm: {n: float(np.median(values)) for n, values in by_n.items()}
            for algorithm, by_n in grouped.items()
        }

    def slopes(self, rows: Iterable[BenchRow]) -> Dict[Algorithm, float]:
        result = {}
        for algorithm, by_n in self.medians(rows).items():
            if len(by_n) >= 2:
                result[algorithm] = fit_loglog_slope(sorted(by_n.items()))
        return result

    @staticmethod
    def write_csv(rows: Iterable[BenchRow], stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([
                row.m, row.N, row.algorithm.value, row.seed, row.rep, row.elapsed_ns, row.verdict.value
            ])

    def to_csv(self, rows: Iterable[BenchRow]) -> str:
        buffer = io.StringIO()
        self.write_csv(rows, buffer)
        return buffer.getvalue()
