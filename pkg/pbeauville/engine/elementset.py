"""
Element sets
Bit vectors over element ranks
"""
from typing import Iterable

import numpy as np


class ElementSet:
    """A subset of a group as a boolean vector indexed by rank; `subgroup` marks closed sets."""

    __slots__ = ("bits", "subgroup")

    def __init__(self, bits: np.ndarray, subgroup: bool = False):
        self.bits = np.asarray(bits, dtype=bool)
        self.subgroup = subgroup

    @classmethod
    def empty(cls, size: int) -> "ElementSet":
        return cls(np.zeros(size, dtype=bool))

    @classmethod
    def full(cls, size: int) -> "ElementSet":
        return cls(np.ones(size, dtype=bool), subgroup=True)

    @classmethod
    def from_ranks(cls, size: int, ranks: Iterable[int], subgroup: bool = False) -> "ElementSet":
        bits = np.zeros(size, dtype=bool)
        ranks = np.fromiter(ranks, dtype=np.int64) if not isinstance(ranks, np.ndarray) else ranks
        bits[ranks] = True
        return cls(bits, subgroup=subgroup)

    @property
    def size(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return int(self.bits.sum())

    def __contains__(self, rank: int) -> bool:
        return bool(self.bits[rank])

    def __iter__(self):
        return iter(self.ranks().tolist())

    def ranks(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.bits | other.bits)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.bits & other.bits, subgroup=self.subgroup and other.subgroup)

    def __invert__(self) -> "ElementSet":
        return ElementSet(~self.bits)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.bits & ~other.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementSet) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(np.packbits(self.bits).tobytes())

    def issubset(self, other: "ElementSet") -> bool:
        return not (self.bits & ~other.bits).any()

    def __repr__(self) -> str:
        kind = "subgroup" if self.subgroup else "set"
        return f"ElementSet({kind}, {len(self)} of {self.size})"
