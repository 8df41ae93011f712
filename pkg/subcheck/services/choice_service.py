"""Induced choice function and the structural predicates on preference lists."""
import logging
from typing import Iterable, Optional, Sequence, Tuple, Union

from subcheck.core.errors import PreconditionError
from subcheck.models import CompletenessFailure, CompletenessReport, PreferenceList, Universe
from subcheck.utils import AltSet, SetLike, as_mask

logger = logging.getLogger(__name__)


def normalize(
    raw: Union[PreferenceList, Iterable[SetLike]],
    universe: Optional[Universe] = None,
) -> PreferenceList:
    """
    Build a preference list, appending the empty set if it is missing.

    Order is preserved and duplicates are kept: a repeated member surfaces
    later as a coherence violation. An already-built ``PreferenceList`` is
    returned unchanged.
    """
    if isinstance(raw, PreferenceList):
        return raw
    if universe is None:
        raise PreconditionError("normalize() needs the universe the sets are drawn from")

    masks = [as_mask(item) for item in raw]
    empty_appended = 0 not in masks
    if empty_appended:
        masks.append(0)
    return PreferenceList(universe=universe, masks=tuple(masks), empty_appended=empty_appended)


def choice_rank(masks: Sequence[int], a: int) -> int:
    """Smallest rank whose member is contained in ``a``."""
    for rank, mask in enumerate(masks):
        if mask & ~a == 0:
            return rank
    raise PreconditionError("no member is contained in the argument; the list lacks the empty set")


def eval_choice(plist: PreferenceList, a: SetLike) -> Tuple[int, AltSet]:
    """f(A): the first member of the list contained in A, with its rank."""
    rank = choice_rank(plist.masks, as_mask(a))
    return rank, AltSet(plist.masks[rank])


def check_coherence(plist: PreferenceList) -> Optional[Tuple[int, int]]:
    """
    Return the lexicographically smallest rank pair (i, j), i < j, whose
    earlier member is a subset of the later one, or None if coherent.
    """
    masks = plist.masks
    n = len(masks)
    for i in range(n):
        x = masks[i]
        for j in range(i + 1, n):
            if x & ~masks[j] == 0:
                return i, j
    return None


def _required_count(size: int, n: int) -> Optional[int]:
    # 2^|X| is only materialised when it can still be reached by a count <= N.
    if size >= 63 or (1 << size) > n:
        return None
    return 1 << size


def completeness_from_counts(masks: Sequence[int], counts: Sequence[int]) -> CompletenessReport:
    """Turn per-member subset counts d_X into a completeness report."""
    n = len(masks)
    first_failure = None
    for rank, (mask, d_x) in enumerate(zip(masks, counts)):
        required = _required_count(mask.bit_count(), n)
        if required is None or d_x != required:
            first_failure = CompletenessFailure(rank=rank, d_x=d_x, required=required)
            break
    return CompletenessReport(
        complete=first_failure is None,
        per_member_counts=tuple(counts),
        first_failure=first_failure,
    )


def check_completeness(plist: PreferenceList) -> CompletenessReport:
    """
    Count, for every member X, the members contained in X (X included) and
    compare against 2^|X|.

    Requires a coherent list: only then do all subset-members of X follow X.
    """
    pair = check_coherence(plist)
    if pair is not None:
        raise PreconditionError(
            f"completeness counts are undefined on an incoherent list "
            f"(rank {pair[0]} is contained in rank {pair[1]})"
        )
    masks = plist.masks
    n = len(masks)
    counts = [1] * n
    for i in range(n):
        x = masks[i]
        for j in range(i + 1, n):
            if masks[j] & ~x == 0:
                counts[i] += 1
    return completeness_from_counts(masks, counts)


def is_fixed_point(plist: PreferenceList, a: SetLike) -> bool:
    """f(A) = A; on a coherent list this is membership of A."""
    mask = as_mask(a)
    rank = choice_rank(plist.masks, mask)
    return plist.masks[rank] == mask


def check_outcast(plist: PreferenceList, a: SetLike, b: SetLike) -> bool:
    """For f(A) ⊆ B ⊆ A, report whether f(B) = f(A)."""
    a_mask = as_mask(a)
    b_mask = as_mask(b)
    f_a = plist.masks[choice_rank(plist.masks, a_mask)]
    if f_a & ~b_mask or b_mask & ~a_mask:
        raise PreconditionError("outcast needs f(A) ⊆ B ⊆ A")
    f_b = plist.masks[choice_rank(plist.masks, b_mask)]
    return f_b == f_a


def prune_incoherent(plist: PreferenceList) -> PreferenceList:
    """
    Drop every member that contains an earlier kept member.

    Such a member is never chosen, so the induced choice function is
    unchanged; the result is coherent and still ends with the empty set.
    """
    kept = []
    for mask in plist.masks:
        if all(k & ~mask for k in kept):
            kept.append(mask)
    dropped = plist.n - len(kept)
    if dropped:
        logger.info(f"Pruned {dropped} unreachable member(s) from a list of {plist.n}")
    return PreferenceList(
        universe=plist.universe,
        masks=tuple(kept),
        empty_appended=plist.empty_appended,
    )
