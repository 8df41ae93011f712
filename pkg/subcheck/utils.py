"""Bitset helpers for subsets of a finite universe.

Subsets are stored as Python integers: bit ``i`` is set when the alternative
with universe index ``i`` is a member. CPython integers are arrays of
machine digits, so union, intersection, difference and the subset test
each walk the digits once. Universes of up to 64 alternatives stay in a
single word; larger universes simply use more digits.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import Any, Union


def make_mask(indexes: Iterable[int]) -> int:
    """Build a mask from universe indices."""
    value = 0
    for idx in indexes:
        if idx < 0:
            raise ValueError(f"index not greater than or equal to 0, index == {idx}")
        value |= 1 << idx
    return value


def full_mask(m: int) -> int:
    """Mask with the lowest ``m`` bits set (the whole universe)."""
    return (1 << m) - 1


def iter_indexes(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_index(mask: int) -> int:
    """Smallest set bit position; ``mask`` must be non-zero."""
    return (mask & -mask).bit_length() - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def iter_submasks(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask`` in ascending numeric order, 0 first."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def iter_supermasks(mask: int, m: int) -> Iterator[int]:
    """Yield every superset of ``mask`` within ``m`` bits, ascending."""
    limit = full_mask(m)
    sup = mask
    while sup <= limit:
        yield sup
        sup = (sup + 1) | mask


class AltSet:
    """An immutable subset of the universe."""

    __slots__ = ("mask",)

    def __init__(self, mask: int = 0) -> None:
        if mask < 0:
            raise ValueError(f"mask must be non-negative, mask == {mask}")
        object.__setattr__(self, "mask", mask)

    @classmethod
    def of(cls, indexes: Iterable[int]) -> "AltSet":
        return cls(make_mask(indexes))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("AltSet is immutable")

    def __contains__(self, idx: Any) -> bool:
        return isinstance(idx, int) and idx >= 0 and (self.mask >> idx) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_indexes(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AltSet):
            return self.mask == other.mask
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def __le__(self, other: "AltSet") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "AltSet") -> bool:
        return self.mask != other.mask and self <= other

    def __ge__(self, other: "AltSet") -> bool:
        return other <= self

    def __gt__(self, other: "AltSet") -> bool:
        return other < self

    def __or__(self, other: "AltSet") -> "AltSet":
        return AltSet(self.mask | other.mask)

    def __and__(self, other: "AltSet") -> "AltSet":
        return AltSet(self.mask & other.mask)

    def __sub__(self, other: "AltSet") -> "AltSet":
        return AltSet(self.mask & ~other.mask)

    def issubset(self, other: "AltSet") -> bool:
        return self <= other

    def with_element(self, idx: int) -> "AltSet":
        return AltSet(self.mask | (1 << idx))

    def __repr__(self) -> str:
        values = "{" + ", ".join(str(i) for i in self) + "}" if self else ""
        return f"{self.__class__.__name__}({values})"


SetLike = Union[AltSet, int]


def as_mask(value: SetLike) -> int:
    """Accept either an ``AltSet`` or a raw mask."""
    if isinstance(value, AltSet):
        return value.mask
    if value < 0:
        raise ValueError(f"mask must be non-negative, mask == {value}")
    return value
