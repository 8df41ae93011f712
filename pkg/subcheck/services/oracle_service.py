"""Ground-truth substitutability decisions straight from the definition."""
import logging
from typing import List, Optional

from subcheck.core.config import settings
from subcheck.core.errors import InvalidSpecError, OracleTooLargeError
from subcheck.models import Algorithm, ChoiceTable, Outcome, PreferenceList, Verdict, Violation, Witness
from subcheck.services.choice_service import check_coherence, check_completeness, choice_rank
from subcheck.utils import iter_submasks, iter_supermasks, lowest_index

logger = logging.getLogger(__name__)

# Hard ceiling: 3^16 subset pairs is already tens of millions of lookups.
ORACLE_HARD_LIMIT = 16

TABLE_STRATEGIES = ("stamp", "scan")


class OracleService:
    """Exhaustive checks over every subset of the universe."""

    def __init__(self, oracle_max: Optional[int] = None):
        self.oracle_max = settings.oracle_max if oracle_max is None else oracle_max
        if not 0 <= self.oracle_max <= ORACLE_HARD_LIMIT:
            raise InvalidSpecError(f"oracle_max must be within 0..{ORACLE_HARD_LIMIT}, got {self.oracle_max}")
        if self.oracle_max > settings.oracle_warn_above:
            logger.warning(
                f"Oracle cap raised to {self.oracle_max}: brute force may visit "
                f"up to {3 ** self.oracle_max} subset pairs"
            )

    def _guard(self, plist: PreferenceList) -> None:
        if plist.m > self.oracle_max:
            raise OracleTooLargeError(plist.m, self.oracle_max)

    def full_choice_table(self, plist: PreferenceList, strategy: str = "stamp") -> ChoiceTable:
        """
        Rank of f(A) for all 2^m subsets A.

        ``stamp`` walks the members in rank order and claims every still
        unassigned superset; ``scan`` evaluates each subset independently.
        """
        self._guard(plist)
        m = plist.m
        size = 1 << m
        masks = plist.masks
        if strategy == "scan":
            ranks = [choice_rank(masks, a) for a in range(size)]
        elif strategy == "stamp":
            ranks = [-1] * size
            remaining = size
            for rank, member in enumerate(masks):
                for sup in iter_supermasks(member, m):
                    if ranks[sup] < 0:
                        ranks[sup] = rank
                        remaining -= 1
                if not remaining:
                    break
        else:
            raise InvalidSpecError(f"unknown choice table strategy: {strategy!r}")
        return ChoiceTable(m=m, ranks=tuple(ranks))

    def brute_force_check(self, plist: PreferenceList) -> Verdict:
        """
        Test f(B) ∩ A ⊆ f(A) for all A ⊆ B ⊆ U and return the first failure
        (B ascending, then A ascending, then smallest x).
        """
        self._guard(plist)
        pair = check_coherence(plist)
        if pair is not None:
            return Verdict(
                outcome=Outcome.NOT_COHERENT,
                algorithm=Algorithm.BRUTE,
                coherent=False,
                incoherent_pair=pair,
            )
        report = check_completeness(plist)
        ranks = self.full_choice_table(plist).ranks
        masks = plist.masks

        for b in range(1 << plist.m):
            f_b = masks[ranks[b]]
            for a in iter_submasks(b):
                bad = f_b & a & ~masks[ranks[a]]
                if bad:
                    violation = Violation(a=a, b=b, x_elem=lowest_index(bad))
                    logger.debug(f"brute force: first violation {violation}")
                    return Verdict(
                        outcome=Outcome.NOT_SUBSTITUTABLE,
                        algorithm=Algorithm.BRUTE,
                        coherent=True,
                        complete=report.complete,
                        violation=violation,
                        incompleteness=report.first_failure,
                    )
        return Verdict(
            outcome=Outcome.SUBSTITUTABLE,
            algorithm=Algorithm.BRUTE,
            coherent=True,
            complete=report.complete,
            incompleteness=report.first_failure,
        )

    def enumerate_all_witnesses(self, plist: PreferenceList) -> List[Witness]:
        """Every (X, Y, x) satisfying the witness definition, in scan order."""
        self._guard(plist)
        ranks = self.full_choice_table(plist).ranks
        masks = plist.masks
        n = len(masks)
        witnesses = []
        for i in range(n):
            x_set = masks[i]
            for j in range(i + 1, n):
                y = masks[j]
                if masks[ranks[x_set | y]] != x_set:
                    continue
                rest = x_set & ~y
                while rest:
                    bit = rest & -rest
                    rest ^= bit
                    if masks[ranks[y | bit]] == y:
                        witnesses.append(Witness(x_rank=i, y_rank=j, x_elem=bit.bit_length() - 1))
        return witnesses


# Global oracle service instance
oracle_service = OracleService()
