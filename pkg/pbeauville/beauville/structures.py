"""
Beauville structures
Decision, search, counting and enumeration of Beauville structures
"""
import logging
from dataclasses import dataclass
from typing import Iterator, Literal, Optional

import numpy as np

from pbeauville.beauville.sigma import (
    NO_SUBGROUP,
    GeneratingPair,
    is_generating_pair,
    sigma,
    signature,
    spanning_mask,
    subgroup_labeler,
)
from pbeauville.engine.frattini import frattini_quotient
from pbeauville.engine.pcgroup import Element, GroupTable
from pbeauville.engine.subgroups import conjugacy_class_labels
from pbeauville.errors import SearchBudgetExceeded, TooLarge
from pbeauville.families.criteria import locate_frattini_obstruction
from pbeauville.parallel import ordered_map

logger = logging.getLogger("pbeauville.beauville")

Strategy = Literal["deterministic_scan", "seeded_random"]


def _exponents(values) -> Element:
    return tuple(int(e) for e in values)


@dataclass(frozen=True)
class BeauvilleStructure:
    pair1: GeneratingPair
    pair2: GeneratingPair

    def to_json(self) -> dict:
        return {"pair1": self.pair1.to_json(), "pair2": self.pair2.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "BeauvilleStructure":
        return cls(
            pair1=GeneratingPair(_exponents(data["pair1"]["x"]), _exponents(data["pair1"]["y"])),
            pair2=GeneratingPair(_exponents(data["pair2"]["x"]), _exponents(data["pair2"]["y"])),
        )


def is_beauville_structure(G: GroupTable, pair1: GeneratingPair, pair2: GeneratingPair) -> bool:
    """Both pairs generate G and Σ(x1, y1) ∩ Σ(x2, y2) = {1}."""
    if not (is_generating_pair(G, pair1.x, pair1.y) and is_generating_pair(G, pair2.x, pair2.y)):
        return False
    shared = sigma(G, pair1.x, pair1.y) & sigma(G, pair2.x, pair2.y)
    return len(shared) == 1


class PairIndex:
    """
    Every unordered generating pair {x, y} of a tabled group, in (min rank, max rank)
    order, with the three subgroup labels of x, y and xy.
    """

    def __init__(self, G: GroupTable):
        if G.order > G.settings.limits.exhaustive_order:
            raise TooLarge(f"pair enumeration is capped at order {G.settings.limits.exhaustive_order}")
        tables = G.require_tables()
        quotient = frattini_quotient(G)
        coords = quotient.all_coords()
        labels = subgroup_labeler(G).labels
        xs, ys = [], []
        for x in range(G.order):
            candidates = np.arange(x, G.order)
            chosen = candidates[spanning_mask(quotient, coords[x], coords[candidates])]
            xs.append(np.full(len(chosen), x, dtype=np.int32))
            ys.append(chosen.astype(np.int32))
        self.x = np.concatenate(xs) if xs else np.empty(0, dtype=np.int32)
        self.y = np.concatenate(ys) if ys else np.empty(0, dtype=np.int32)
        products = tables.cayley[self.x, self.y]
        self.sig = np.stack([labels[self.x], labels[self.y], labels[products]], axis=1).astype(np.int32)
        logger.info(f"✓ Indexed {len(self.x)} generating pairs of group of order {G.order}")

    def __len__(self) -> int:
        return len(self.x)

    def pair(self, G: GroupTable, index: int) -> GeneratingPair:
        return GeneratingPair(G.unrank(int(self.x[index])), G.unrank(int(self.y[index])))


def pair_index(G: GroupTable) -> PairIndex:
    return G.cached("pair_index", lambda: PairIndex(G))


def _disjoint_rows(sig: np.ndarray, row: np.ndarray) -> np.ndarray:
    wanted = row[row != NO_SUBGROUP]
    return ~np.isin(sig, wanted).any(axis=1)


def _partners_in(sig: np.ndarray, i: int) -> np.ndarray:
    return np.flatnonzero(_disjoint_rows(sig[i + 1:], sig[i])) + i + 1


def _partners(job) -> list[tuple[int, int]]:
    sig, start, stop = job
    found = []
    for i in range(start, stop):
        found.extend((i, int(j)) for j in _partners_in(sig, i))
    return found


def disjoint_partners(index: PairIndex) -> Iterator[tuple[int, np.ndarray]]:
    """For each pair i, the later pairs j forming a Beauville structure with it."""
    for i in range(len(index)):
        yield i, _partners_in(index.sig, i)


def enumerate_beauville_structures(G: GroupTable, workers: int = 1, chunk: int = 256) -> Iterator[BeauvilleStructure]:
    """
    Every Beauville structure exactly once, ordered by the canonical keys of its two pairs.

    Args:
        G: A group of order at most limits.exhaustive_order
        workers: Process pool size; the order of the output does not depend on it
        chunk: Outer pairs per parallel job
    """
    index = pair_index(G)
    bounds = [(index.sig, s, min(s + chunk, len(index))) for s in range(0, len(index), chunk)]
    for block in ordered_map(_partners, bounds, workers):
        for i, j in block:
            yield BeauvilleStructure(index.pair(G, i), index.pair(G, j))


def count_beauville_structures(G: GroupTable) -> int:
    """Number of Beauville structures, counted by signature classes of pairs."""
    if G.order == 1:
        return 0
    index = pair_index(G)
    rows = np.sort(index.sig, axis=1)
    unique, counts = np.unique(rows, axis=0, return_counts=True)
    total = 0
    for s in range(len(unique)):
        disjoint = _disjoint_rows(unique[s + 1:], unique[s])
        total += int(counts[s]) * int(counts[s + 1:][disjoint].sum())
    return total


def _class_representatives(G: GroupTable) -> np.ndarray:
    _, first = np.unique(conjugacy_class_labels(G), return_index=True)
    return np.sort(first)


def _find_partner(G: GroupTable, forbidden: frozenset[int]) -> Optional[GeneratingPair]:
    # Conjugating a pair by any g keeps its labels, so x2 may run over class representatives.
    tables = G.tables
    quotient = frattini_quotient(G)
    coords = quotient.all_coords()
    labels = subgroup_labeler(G).labels
    allowed = ~np.isin(labels, list(forbidden))
    for x in _class_representatives(G):
        if not allowed[x]:
            continue
        ys = np.flatnonzero(allowed)
        ys = ys[spanning_mask(quotient, coords[x], coords[ys])]
        ys = ys[allowed[tables.cayley[x, ys]]]
        if ys.size:
            return GeneratingPair(G.unrank(int(x)), G.unrank(int(ys[0])))
    return None


def _deterministic_scan(G: GroupTable) -> Optional[BeauvilleStructure]:
    if G.tables is None:
        raise TooLarge(f"deterministic scan needs rank tables (order <= {G.settings.limits.table_order})")
    if G.distinguished is not None:
        first = GeneratingPair(*G.distinguished)
        partner = _find_partner(G, signature(G, first.x, first.y))
        if partner is not None:
            return BeauvilleStructure(first, partner)

    tried: set[frozenset[int]] = set()
    quotient = frattini_quotient(G)
    coords = quotient.all_coords()
    labels = subgroup_labeler(G).labels
    tables = G.tables
    everything = np.arange(G.order)
    for x in _class_representatives(G):
        ys = everything[spanning_mask(quotient, coords[x], coords)]
        rows = np.stack([np.full(len(ys), labels[x]), labels[ys], labels[tables.cayley[x, ys]]], axis=1)
        _, first_rows = np.unique(np.sort(rows, axis=1), axis=0, return_index=True)
        for k in np.sort(first_rows):
            key = frozenset(int(v) for v in rows[k] if v != NO_SUBGROUP)
            if key in tried:
                continue
            tried.add(key)
            partner = _find_partner(G, key)
            if partner is not None:
                return BeauvilleStructure(GeneratingPair(G.unrank(int(x)), G.unrank(int(ys[k]))), partner)
    logger.info(f"No Beauville structure in group of order {G.order} ({len(tried)} signatures tried)")
    return None


def random_beauville_structure(G: GroupTable, rng: np.random.Generator, budget: Optional[int] = None) -> Optional[BeauvilleStructure]:
    """Draw random pairs of pairs until one forms a Beauville structure, or give up after budget draws."""
    budget = budget or G.settings.search.random_budget
    quotient = frattini_quotient(G)
    for attempt in range(budget):
        x1, y1, x2, y2 = (G.unrank(int(r)) for r in rng.integers(0, G.order, size=4))
        if not (quotient.spans(x1, y1) and quotient.spans(x2, y2)):
            continue
        if signature(G, x1, y1) & signature(G, x2, y2):
            continue
        logger.debug(f"Random structure found after {attempt + 1} draws")
        return BeauvilleStructure(GeneratingPair(x1, y1), GeneratingPair(x2, y2))
    return None


def find_beauville_structure(
        G: GroupTable,
        strategy: Strategy = "deterministic_scan",
        seed: int = 0,
        budget: Optional[int] = None,
) -> Optional[BeauvilleStructure]:
    """
    Search for a Beauville structure.

    deterministic_scan is exhaustive: None means no structure exists.
    seeded_random raises SearchBudgetExceeded instead of returning None.
    """
    if G.order == 1:
        return None
    if strategy == "deterministic_scan":
        found = _deterministic_scan(G)
    elif strategy == "seeded_random":
        found = random_beauville_structure(G, np.random.default_rng(seed), budget)
        if found is None:
            raise SearchBudgetExceeded(f"no structure in {budget or G.settings.search.random_budget} random draws")
    else:
        raise ValueError(f"Unknown strategy: {strategy}")
    if found is not None and not is_beauville_structure(G, found.pair1, found.pair2):
        raise RuntimeError("signature search produced a pair of pairs whose Σ-sets intersect")
    return found


def is_beauville_group(G: GroupTable, seed: int = 0) -> bool:
    """Exhaustive when G is within the table and exhaustive caps, budgeted random search otherwise."""
    if G.order == 1:
        return False
    limits = G.settings.limits
    if G.order <= min(limits.table_order, limits.exhaustive_order):
        return find_beauville_structure(G) is not None
    return find_beauville_structure(G, "seeded_random", seed=seed) is not None


def frattini_obstruction_holds(G: GroupTable) -> bool:
    """In a class-2 2-group, a^{2^{e-1}} lies in Σ(x, y) for every generating pair."""
    obstruction = locate_frattini_obstruction(G)
    if not obstruction.uniform:
        return False
    label = subgroup_labeler(G).label(obstruction.power)
    index = pair_index(G)
    return bool((index.sig == label).any(axis=1).all())
