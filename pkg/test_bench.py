#!/usr/bin/env python3
"""
Tests for the benchmark harness. The scaling checks time real runs and
only execute with SUBCHECK_RUN_SLOW=1.
"""

import io
import os
import sys
import time
from pathlib import Path

import pytest

# Add package directory to Python path
sys.path.insert(0, str(Path(__file__).parent))

from subcheck.core.errors import InvalidSpecError, InvariantError
from subcheck.models import Algorithm, BenchRow, Outcome, Verdict
from subcheck.services.bench_service import CSV_COLUMNS, BenchService, fit_loglog_slope
from subcheck.services.checker_service import CheckerService, find_witness_fast
from subcheck.services.generator_service import gen_complete_coherent
from subcheck.services.oracle_service import OracleService

RUN_SLOW = os.environ.get("SUBCHECK_RUN_SLOW") == "1"
slow = pytest.mark.skipif(not RUN_SLOW, reason="set SUBCHECK_RUN_SLOW=1 to run timing checks")


class TestSlopeFit:

    def test_quadratic(self):
        points = [(n, 3 * n * n) for n in (256, 512, 1024, 2048)]
        assert fit_loglog_slope(points) == pytest.approx(2.0)

    def test_cubic(self):
        points = [(n, n ** 3) for n in (8, 16, 32)]
        assert fit_loglog_slope(points) == pytest.approx(3.0)

    def test_needs_two_points(self):
        with pytest.raises(InvalidSpecError):
            fit_loglog_slope([(8, 100)])

    def test_zero_elapsed_clamped(self):
        slope = fit_loglog_slope([(8, 0), (16, 0), (32, 0)])
        assert isinstance(slope, float)
        assert slope == pytest.approx(0.0)

    def test_medians_of_even_counts(self):
        rows = [
            BenchRow(m=3, N=8, algorithm=Algorithm.FAST, seed=0, rep=rep, elapsed_ns=t, verdict=Outcome.SUBSTITUTABLE)
            for rep, t in enumerate([10, 40, 20, 30])
        ]
        assert BenchService.medians(rows) == {Algorithm.FAST: {8: 25.0}}


class TestBenchService:

    def setup_method(self):
        self.service = BenchService(CheckerService(oracle=OracleService(oracle_max=8)))

    def test_rows(self):
        rows = self.service.run([3, 4], [Algorithm.FAST, Algorithm.NAIVE], reps=2, seed=1, warmup=False)
        assert len(rows) == 2 * 2 * 2
        assert {row.N for row in rows} == {8, 16}
        assert all(row.seed == 1 for row in rows)
        assert [row.rep for row in rows[:2]] == [0, 1]
        for m in (3, 4):
            verdicts = {row.verdict for row in rows if row.m == m}
            assert len(verdicts) == 1, f"m={m}: verdicts disagree {verdicts}"

    def test_single_size_row(self):
        rows = self.service.run([8], [Algorithm.FAST], reps=1, warmup=False)
        assert rows[0].N == 256

    def test_csv(self):
        rows = self.service.run([2], [Algorithm.FAST, Algorithm.BRUTE], reps=1)
        stream = io.StringIO()
        self.service.write_csv(rows, stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 3
        assert lines[2].startswith("2,4,brute,0,0,")
        assert self.service.to_csv(rows).splitlines()[0] == lines[0]

    def test_medians_and_slopes(self):
        rows = self.service.run([3, 4, 5], [Algorithm.FAST], reps=3, warmup=False)
        medians = self.service.medians(rows)
        assert set(medians[Algorithm.FAST]) == {8, 16, 32}
        assert Algorithm.FAST in self.service.slopes(rows)

    def test_rejects_bad_arguments(self):
        with pytest.raises(InvalidSpecError):
            self.service.run([3], [Algorithm.FAST], reps=0)
        with pytest.raises(InvalidSpecError):
            self.service.run([3], [], reps=1)
        with pytest.raises(InvalidSpecError):
            self.service.run([30], [Algorithm.FAST], reps=1)

    def test_few_reps_warn(self, caplog):
        with caplog.at_level("WARNING"):
            self.service.run([2], [Algorithm.FAST], reps=1)
        assert any("reps" in record.message for record in caplog.records)

    def test_disagreement_is_invariant_error(self):
        class Disagreeing(CheckerService):
            def check(self, plist, algorithm=None, mode=None):
                verdict = find_witness_fast(plist)
                if algorithm == Algorithm.NAIVE:
                    return Verdict(
                        outcome=Outcome.NOT_COHERENT,
                        algorithm=Algorithm.NAIVE,
                        coherent=False,
                        incoherent_pair=(0, 1),
                    )
                return verdict

        service = BenchService(Disagreeing())
        with pytest.raises(InvariantError):
            service.run([3], [Algorithm.FAST, Algorithm.NAIVE], reps=1, warmup=False)


@pytest.mark.slow
@slow
class TestScaling:
    """Runtime growth of the fast checker against the naive baseline."""

    def test_fast_slope_near_quadratic(self):
        service = BenchService()
        rows = service.run([8, 9, 10, 11], [Algorithm.FAST], reps=5, warmup=True)
        slope = service.slopes(rows)[Algorithm.FAST]
        assert 1.6 <= slope <= 2.4, f"fast log-log slope {slope:.2f} outside [1.6, 2.4]"

    def test_fast_beats_naive_at_1024(self):
        service = BenchService()
        rows = service.run([10], [Algorithm.FAST, Algorithm.NAIVE], reps=5, warmup=True)
        medians = service.medians(rows)
        fast = medians[Algorithm.FAST][1024]
        naive = medians[Algorithm.NAIVE][1024]
        assert naive >= 20 * fast, f"naive {naive / 1e6:.1f} ms vs fast {fast / 1e6:.1f} ms"

    def test_fast_handles_4096(self):
        plist = gen_complete_coherent(12, 0)
        started = time.perf_counter()
        verdict = find_witness_fast(plist)
        elapsed = time.perf_counter() - started
        assert verdict.complete is True
        assert elapsed <= 60, f"m=12 took {elapsed:.1f} s"
