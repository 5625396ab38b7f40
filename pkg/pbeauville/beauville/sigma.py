"""
Σ-sets
Unions of conjugates of the cyclic subgroups <x>, <y>, <xy>, and their signatures
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from pbeauville.engine.elementset import ElementSet
from pbeauville.engine.frattini import FrattiniQuotient, frattini_quotient
from pbeauville.engine.pcgroup import Element, GroupTable
from pbeauville.engine.subgroups import conjugacy_class_labels, orbit_with_transversal

logger = logging.getLogger("pbeauville.beauville")

NO_SUBGROUP = -1


@dataclass(frozen=True)
class GeneratingPair:
    x: Element
    y: Element

    def ranks(self, G: GroupTable) -> tuple[int, int]:
        """Canonical (min rank, max rank) key of the unordered pair."""
        a, b = G.rank(self.x), G.rank(self.y)
        return (a, b) if a <= b else (b, a)

    def to_json(self) -> dict:
        return {"x": list(self.x), "y": list(self.y)}


def cyclic_ranks(G: GroupTable, u: Element) -> np.ndarray:
    tables = G.tables
    if tables is not None:
        r = G.rank(u)
        order = int(tables.orders[r])
        ranks = np.empty(order, dtype=np.int64)
        ranks[0], current = 0, 0
        for k in range(1, order):
            current = tables.cayley[current, r]
            ranks[k] = current
        return ranks
    ranks, h = [0], u
    while h != G.identity:
        ranks.append(G.rank(h))
        h = G.multiply(h, u)
    return np.array(ranks, dtype=np.int64)


def _conjugates_of_cyclic(G: GroupTable, u: Element) -> set[int]:
    # Orbit of the subgroup <u> under conjugation; subgroups are keyed by their rank sets.
    G.check_set_size()
    start = frozenset(int(r) for r in cyclic_ranks(G, u))
    seen = {start}
    frontier = [start]
    members = set(start)
    gens = [G.unit(i) for i in range(G.n)]
    while frontier:
        nxt = []
        for subgroup in frontier:
            generator = G.unrank(max(subgroup, key=lambda r: G.order_of(G.unrank(r))))
            for g in gens:
                image = frozenset(int(r) for r in cyclic_ranks(G, G.conjugate(generator, g)))
                if image not in seen:
                    seen.add(image)
                    members |= image
                    nxt.append(image)
        frontier = nxt
    return members


def sigma(G: GroupTable, x: Element, y: Element) -> ElementSet:
    """Σ(x, y): the union over g of <x>^g, <y>^g and <xy>^g."""
    xy = G.multiply(x, y)
    if G.tables is not None:
        labels = conjugacy_class_labels(G)
        ranks = np.concatenate([cyclic_ranks(G, u) for u in (x, y, xy)])
        return ElementSet(np.isin(labels, np.unique(labels[ranks])))
    members: set[int] = set()
    for u in (x, y, xy):
        members |= _conjugates_of_cyclic(G, u)
    return ElementSet.from_ranks(G.order, members)


class SubgroupLabeler:
    """
    Labels each element u != 1 by the conjugacy class of the order-p subgroup of <u>.

    Two Σ-sets meet only in the identity exactly when the labels of their three
    cyclic generators are disjoint, since a cyclic p-group has one subgroup of order p.
    """

    def __init__(self, G: GroupTable):
        self.G = G
        self._memo: dict[int, int] = {}
        self.labels: Optional[np.ndarray] = None
        tables = G.tables
        if tables is not None:
            self.labels = self._label_all(tables)

    def _label_all(self, tables) -> np.ndarray:
        G, p = self.G, self.G.prime
        orders = tables.orders
        bottom = np.zeros(G.order, dtype=np.int64)
        for o in np.unique(orders):
            if o == 1:
                continue
            idx = np.flatnonzero(orders == o)
            bottom[idx] = tables.power(idx, int(o) // p)
        classes = conjugacy_class_labels(G)
        labels = classes[bottom]
        for k in range(2, p):
            labels = np.minimum(labels, classes[tables.power(bottom, k)])
        labels[orders == 1] = NO_SUBGROUP
        return labels

    def label(self, u: Element) -> int:
        G = self.G
        r = G.rank(u)
        if self.labels is not None:
            return int(self.labels[r])
        if r in self._memo:
            return self._memo[r]
        if u == G.identity:
            return NO_SUBGROUP
        order = G.order_of(u)
        bottom = G.power_of(u, order // G.prime)
        # Smallest rank over the conjugacy classes of the generators of <bottom>.
        label = min(
            min(orbit_with_transversal(G, G.power_of(bottom, k), G.conjugate))
            for k in range(1, G.prime)
        )
        value = G.rank(label)
        self._memo[r] = value
        return value


def subgroup_labeler(G: GroupTable) -> SubgroupLabeler:
    return G.cached("subgroup_labeler", lambda: SubgroupLabeler(G))


def signature(G: GroupTable, x: Element, y: Element) -> frozenset[int]:
    """Labels of the order-p subgroups under <x>, <y> and <xy>."""
    labeler = subgroup_labeler(G)
    labels = {labeler.label(u) for u in (x, y, G.multiply(x, y))}
    labels.discard(NO_SUBGROUP)
    return frozenset(labels)


def spanning_mask(quotient: FrattiniQuotient, x_coords: np.ndarray, y_coords: np.ndarray) -> np.ndarray:
    """Vectorized generation test: which (x, y) rows span G/Φ(G)."""
    p, dim = quotient.prime, quotient.dim
    x_coords = np.broadcast_to(x_coords, y_coords.shape)
    if dim == 0:
        return np.ones(len(y_coords), dtype=bool)
    if dim == 1:
        return (x_coords[:, 0] % p != 0) | (y_coords[:, 0] % p != 0)
    if dim == 2:
        det = x_coords[:, 0] * y_coords[:, 1] - x_coords[:, 1] * y_coords[:, 0]
        return det % p != 0
    return np.zeros(len(y_coords), dtype=bool)


def is_generating_pair(G: GroupTable, x: Element, y: Element) -> bool:
    """<x, y> = G, decided by the images of x and y in G/Φ(G)."""
    return frattini_quotient(G).spans(x, y)
