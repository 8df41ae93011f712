"""Sensitivity matrix and the witness searches (fast two-phase and naive)."""
import logging
import time
from typing import List, Optional, Sequence, Tuple

from subcheck.core.config import settings
from subcheck.core.errors import InvariantError, PreconditionError
from subcheck.models import (
    Algorithm,
    CheckerMode,
    CompletenessReport,
    Outcome,
    PreferenceList,
    SensMatrix,
    Verdict,
    Violation,
    Witness,
)
from subcheck.services.choice_service import (
    check_coherence,
    check_completeness,
    choice_rank,
    completeness_from_counts,
)
from subcheck.utils import lowest_index

logger = logging.getLogger(__name__)


def _phase_one(masks: Sequence[int]) -> Tuple[Optional[Tuple[int, int]], List[int], List[int]]:
    """
    One pass over ordered pairs X ≻ Y doing coherence, d_X counting and
    sensitivity at once.

    Returns (incoherent pair or None, d_X counts, sensitivity rows). On a
    coherence violation the counts and rows are partial and must be
    discarded.
    """
    n = len(masks)
    counts = [1] * n
    rows = [0] * n
    for i in range(n):
        x = masks[i]
        for j in range(i + 1, n):
            y = masks[j]
            diff = x & ~y
            if not diff:
                return (i, j), counts, rows
            if y & ~x == 0:
                counts[i] += 1
            # X ⊆ Y ∪ {x} for some x ∉ Y exactly when X − Y = {x}
            if diff & (diff - 1) == 0:
                rows[j] |= diff
    return None, counts, rows


def build_sensitivity(plist: PreferenceList) -> SensMatrix:
    """Sensitivity rows: bit x of row r is set iff f(members[r] ∪ {x}) ≠ members[r]."""
    pair, _, rows = _phase_one(plist.masks)
    if pair is not None:
        raise PreconditionError(
            f"sensitivity is only defined for coherent lists "
            f"(rank {pair[0]} is contained in rank {pair[1]})"
        )
    return SensMatrix(m=plist.m, rows=tuple(rows))


def printed_condition(plist: PreferenceList, sens: SensMatrix, i: int, j: int) -> bool:
    """
    The pair test with the sensitivity polarity as originally published:
    some x ∈ X − Y has Y *sensitive* to x, and X is insensitive to all of Y − X.

    It fires on substitutable lists and is not used by any checker.
    """
    x = plist.masks[i]
    y = plist.masks[j]
    return bool((x & ~y) & sens.rows[j]) and not ((y & ~x) & sens.rows[i])


def _scan_pairs(masks: Sequence[int], rows: Sequence[int]) -> Optional[Witness]:
    n = len(masks)
    for i in range(n):
        x = masks[i]
        sens_x = rows[i]
        for j in range(i + 1, n):
            y = masks[j]
            if (y & ~x) & sens_x:
                continue
            candidates = x & ~y & ~rows[j]
            if candidates:
                return Witness(x_rank=i, y_rank=j, x_elem=lowest_index(candidates))
    return None


def _not_coherent(algorithm: Algorithm, mode: Optional[CheckerMode], pair: Tuple[int, int]) -> Verdict:
    return Verdict(
        outcome=Outcome.NOT_COHERENT,
        algorithm=algorithm,
        mode=mode,
        coherent=False,
        incoherent_pair=pair,
    )


def _finish(
    plist: PreferenceList,
    algorithm: Algorithm,
    mode: Optional[CheckerMode],
    report: CompletenessReport,
    witness: Optional[Witness],
) -> Verdict:
    if witness is None:
        if not report.complete:
            # A list without a witness is substitutable, and substitutable lists are complete.
            raise InvariantError(
                f"{algorithm.value} checker found no witness on an incomplete list "
                f"(first failure at rank {report.first_failure.rank})"
            )
        return Verdict(
            outcome=Outcome.SUBSTITUTABLE,
            algorithm=algorithm,
            mode=mode,
            coherent=True,
            complete=True,
        )
    return Verdict(
        outcome=Outcome.NOT_SUBSTITUTABLE,
        algorithm=algorithm,
        mode=mode,
        coherent=True,
        complete=report.complete,
        witness=witness,
        violation=witness_to_violation(plist, witness),
        incompleteness=report.first_failure,
    )


def find_witness_fast(plist: PreferenceList, mode: CheckerMode = CheckerMode.WITNESS) -> Verdict:
    """
    Two-phase search for the first witness in O(|U|^2 N^2).

    Phase 1 fuses the coherence check, the d_X counts and the sensitivity
    rows into one pass over ordered pairs. Phase 2 scans pairs (X, Y) in
    rank order and accepts the first pair where X is insensitive to every
    y ∈ Y − X and Y is insensitive to some x ∈ X − Y. Because no earlier X
    carried a witness, the first condition is equivalent to f(X ∪ Y) = X.

    In figure1 mode an incomplete list is rejected before phase 2 without
    a witness; witness mode always runs phase 2.
    """
    masks = plist.masks
    started = time.perf_counter_ns()
    pair, counts, rows = _phase_one(masks)
    logger.debug(f"fast phase 1: n={plist.n} m={plist.m} in {time.perf_counter_ns() - started} ns")
    if pair is not None:
        return _not_coherent(Algorithm.FAST, mode, pair)

    report = completeness_from_counts(masks, counts)
    if mode == CheckerMode.FIGURE1 and not report.complete:
        return Verdict(
            outcome=Outcome.NOT_SUBSTITUTABLE,
            algorithm=Algorithm.FAST,
            mode=mode,
            coherent=True,
            complete=False,
            incompleteness=report.first_failure,
        )

    started = time.perf_counter_ns()
    witness = _scan_pairs(masks, rows)
    logger.debug(f"fast phase 2: witness={witness} in {time.perf_counter_ns() - started} ns")
    return _finish(plist, Algorithm.FAST, mode, report, witness)


def find_witness_naive(plist: PreferenceList) -> Verdict:
    """
    Baseline search in O(N^3 |U|): tabulate insensitive elements with
    N·|U| direct evaluations, then evaluate f(X ∪ Y) for every pair.

    Scans pairs in the same order and picks the same x as the fast search,
    so both return identical witnesses.
    """
    masks = plist.masks
    pair = check_coherence(plist)
    if pair is not None:
        return _not_coherent(Algorithm.NAIVE, None, pair)
    report = check_completeness(plist)

    n = len(masks)
    m = plist.m
    insensitive = [0] * n
    for rank, y in enumerate(masks):
        for x in range(m):
            bit = 1 << x
            if not y & bit and choice_rank(masks, y | bit) == rank:
                insensitive[rank] |= bit

    witness = None
    for i in range(n):
        x_set = masks[i]
        for j in range(i + 1, n):
            y = masks[j]
            if choice_rank(masks, x_set | y) != i:
                continue
            candidates = x_set & ~y & insensitive[j]
            if candidates:
                witness = Witness(x_rank=i, y_rank=j, x_elem=lowest_index(candidates))
                break
        if witness is not None:
            break
    return _finish(plist, Algorithm.NAIVE, None, report, witness)


def verify_witness(plist: PreferenceList, w: Witness) -> bool:
    """Check the witness definition by direct evaluation only."""
    masks = plist.masks
    n = len(masks)
    if not (0 <= w.x_rank < w.y_rank < n) or w.x_elem >= plist.m:
        return False
    x_set = masks[w.x_rank]
    y = masks[w.y_rank]
    bit = 1 << w.x_elem
    if masks[choice_rank(masks, x_set | y)] != x_set:
        return False
    if not (x_set & bit) or y & bit:
        return False
    return masks[choice_rank(masks, y | bit)] == y


def verify_violation(plist: PreferenceList, v: Violation) -> bool:
    """A ⊆ B, x ∈ f(B) ∩ A and x ∉ f(A), by direct evaluation."""
    if v.x_elem >= plist.m or v.a & ~v.b:
        return False
    masks = plist.masks
    bit = 1 << v.x_elem
    f_b = masks[choice_rank(masks, v.b)]
    f_a = masks[choice_rank(masks, v.a)]
    return bool(f_b & v.a & bit) and not f_a & bit


def witness_to_violation(plist: PreferenceList, w: Witness) -> Violation:
    """A = Y ∪ {x}, B = X ∪ Y."""
    if not verify_witness(plist, w):
        raise PreconditionError(f"not a witness: {w}")
    x_set = plist.masks[w.x_rank]
    y = plist.masks[w.y_rank]
    violation = Violation(a=y | (1 << w.x_elem), b=x_set | y, x_elem=w.x_elem)
    if not verify_violation(plist, violation):
        raise InvariantError(f"witness {w} produced an invalid violation {violation}")
    return violation


def violation_to_witness(plist: PreferenceList, v: Violation) -> Witness:
    """(f(B), f(A)) with the same x; needs a coherent list."""
    if not verify_violation(plist, v):
        raise PreconditionError(f"not a violation: {v}")
    pair = check_coherence(plist)
    if pair is not None:
        raise PreconditionError("violation_to_witness needs a coherent list")
    masks = plist.masks
    witness = Witness(
        x_rank=choice_rank(masks, v.b),
        y_rank=choice_rank(masks, v.a),
        x_elem=v.x_elem,
    )
    if not verify_witness(plist, witness):
        raise InvariantError(f"violation {v} produced an invalid witness {witness}")
    return witness


class CheckerService:
    """Dispatch a preference list to one of the three checkers."""

    def __init__(self, oracle=None):
        self._oracle = oracle

    @property
    def oracle(self):
        if self._oracle is None:
            from subcheck.services.oracle_service import oracle_service
            self._oracle = oracle_service
        return self._oracle

    def check(
        self,
        plist: PreferenceList,
        algorithm: Optional[Algorithm] = None,
        mode: Optional[CheckerMode] = None,
    ) -> Verdict:
        algorithm = Algorithm(algorithm or settings.default_algorithm)
        mode = CheckerMode(mode or settings.default_mode)
        started = time.perf_counter_ns()
        if algorithm == Algorithm.FAST:
            verdict = find_witness_fast(plist, mode)
        elif algorithm == Algorithm.NAIVE:
            verdict = find_witness_naive(plist)
        else:
            verdict = self.oracle.brute_force_check(plist)
        elapsed = time.perf_counter_ns() - started
        logger.info(
            f"{algorithm.value} check of n={plist.n} m={plist.m}: "
            f"{verdict.outcome.value} in {elapsed} ns"
        )
        return verdict


# Global checker service instance
checker_service = CheckerService()
