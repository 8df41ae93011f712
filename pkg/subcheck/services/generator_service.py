"""Seeded generators of substitutable and non-substitutable preference lists.

All randomness comes from ``random.Random(seed)`` (Mersenne Twister,
MT19937), so a given spec reproduces the same list on every platform.
"""
import logging
import random
import string
import sys
from itertools import combinations
from typing import List, Optional, Sequence

from pydantic import ValidationError

from subcheck.core.config import settings
from subcheck.core.errors import InvalidSpecError, PreconditionError
from subcheck.models import GenKind, GenSpec, PreferenceList, Universe
from subcheck.services.choice_service import normalize

logger = logging.getLogger(__name__)

PRNG_NAME = "MT19937"


def default_universe(m: int) -> Universe:
    """Letters a..z for small universes, x0, x1, ... beyond that."""
    if m < 0:
        raise InvalidSpecError(f"universe size must be non-negative, got {m}")
    if m <= len(string.ascii_lowercase):
        names = tuple(string.ascii_lowercase[:m])
    else:
        names = tuple(f"x{i}" for i in range(m))
    return Universe(alternatives=names)


def gen_responsive(
    m: int,
    q: int,
    seed: int = 0,
    priority: Optional[Sequence[int]] = None,
) -> PreferenceList:
    """
    List realising the responsive choice with capacity ``q``: f(A) keeps the
    min(q, |A|) highest-priority elements of A.

    Members are all subsets of size <= q, ordered by their priority-rank
    vectors (best first, padded to length q with a rank worse than any
    alternative), so the empty set comes last.
    """
    if not 1 <= q <= m:
        raise InvalidSpecError(f"responsive lists need 1 <= q <= m (m={m}, q={q})")
    if priority is None:
        order = list(range(m))
        random.Random(seed).shuffle(order)
    else:
        order = list(priority)
        if sorted(order) != list(range(m)):
            raise InvalidSpecError(f"priority must be a permutation of 0..{m - 1}, got {order}")
    rank_of = {alt: pos for pos, alt in enumerate(order)}

    pad = m
    keyed = []
    for size in range(q + 1):
        for subset in combinations(range(m), size):
            vector = sorted(rank_of[alt] for alt in subset)
            vector += [pad] * (q - size)
            mask = 0
            for alt in subset:
                mask |= 1 << alt
            keyed.append((vector, mask))
    keyed.sort(key=lambda item: item[0])
    return normalize([mask for _, mask in keyed], default_universe(m))


def gen_complete_coherent(m: int, seed: int = 0, max_m: Optional[int] = None) -> PreferenceList:
    """
    Random linear extension of reverse inclusion over all 2^m subsets.

    Repeatedly places a uniformly chosen set among those whose supersets
    are all placed, so every set precedes its proper subsets.
    """
    limit = settings.max_complete_m if max_m is None else max_m
    if not 0 <= m <= limit:
        raise InvalidSpecError(f"complete coherent lists need 0 <= m <= {limit}, got {m}")
    rng = random.Random(seed)
    full = (1 << m) - 1
    # Number of one-element-larger supersets not yet placed.
    pending = [m - mask.bit_count() for mask in range(1 << m)]
    ready = [full]
    order: List[int] = []
    while ready:
        pick = rng.randrange(len(ready))
        ready[pick], ready[-1] = ready[-1], ready[pick]
        mask = ready.pop()
        order.append(mask)
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            sub = mask ^ bit
            pending[sub] -= 1
            if pending[sub] == 0:
                ready.append(sub)
    return normalize(order, default_universe(m))


def gen_random_coherent(m: int, n: int, seed: int = 0) -> PreferenceList:
    """
    ``n`` distinct random subsets in non-increasing cardinality (ties
    shuffled), the empty set appended if missing. A set can only contain
    an earlier one if sizes increased, so the list is coherent.
    """
    if m < 0 or not 0 <= n <= (1 << m):
        raise InvalidSpecError(f"random coherent lists need 0 <= n <= 2^m (m={m}, n={n})")
    rng = random.Random(seed)
    if (1 << m) <= sys.maxsize:
        chosen = rng.sample(range(1 << m), n)
    else:
        # range() lengths must fit a C ssize_t; draw distinct masks directly
        chosen, seen = [], set()
        while len(chosen) < n:
            mask = rng.getrandbits(m)
            if mask not in seen:
                seen.add(mask)
                chosen.append(mask)
    rng.shuffle(chosen)
    chosen.sort(key=lambda mask: -mask.bit_count())
    return normalize(chosen, default_universe(m))


def droppable_ranks(plist: PreferenceList) -> List[int]:
    """Non-empty members that are proper subsets of some earlier member."""
    masks = plist.masks
    eligible = []
    for rank, y in enumerate(masks):
        if not y:
            continue
        if any(x != y and y & ~x == 0 for x in masks[:rank]):
            eligible.append(rank)
    return eligible


def mutate_drop(plist: PreferenceList, rank: Optional[int] = None, seed: int = 0) -> PreferenceList:
    """
    Remove a member that is a proper subset of an earlier member.

    The surviving superset then misses one of its subsets, so the result
    is incomplete and therefore not substitutable. With ``rank=None`` the
    seed picks one of the eligible ranks.
    """
    eligible = droppable_ranks(plist)
    if rank is None:
        if not eligible:
            raise PreconditionError("no member can be dropped while guaranteeing incompleteness")
        rank = random.Random(seed).choice(eligible)
    elif not 0 <= rank < plist.n:
        raise PreconditionError(f"rank {rank} out of range for list of {plist.n} members")
    elif plist.masks[rank] == 0:
        raise PreconditionError("the empty set cannot be dropped")
    elif rank not in eligible:
        raise PreconditionError(
            f"member at rank {rank} has no earlier superset; dropping it does not guarantee incompleteness"
        )
    logger.debug(f"Dropping rank {rank} from a list of {plist.n}")
    masks = plist.masks[:rank] + plist.masks[rank + 1:]
    return PreferenceList(universe=plist.universe, masks=masks, empty_appended=plist.empty_appended)


def build_spec(**params) -> GenSpec:
    """GenSpec from loose parameters, with validation errors as InvalidSpecError."""
    try:
        return GenSpec(**params)
    except ValidationError as e:
        raise InvalidSpecError(f"invalid generator spec: {e.errors()[0]['msg']}") from e


def generate(spec: GenSpec, max_complete_m: Optional[int] = None) -> PreferenceList:
    """Dispatch on the generator family."""
    logger.info(f"Generating instance: {spec.describe()}")
    if spec.kind == GenKind.RESPONSIVE:
        return gen_responsive(spec.m, spec.q, spec.seed)
    if spec.kind == GenKind.COMPLETE_COHERENT:
        return gen_complete_coherent(spec.m, spec.seed, max_m=max_complete_m)
    return gen_random_coherent(spec.m, spec.n, spec.seed)
