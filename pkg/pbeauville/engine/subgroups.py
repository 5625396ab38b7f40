"""
Subgroups
Generated subgroups, normal closures, series, centralizers and conjugacy classes
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from pbeauville.engine.elementset import ElementSet
from pbeauville.engine.pcgroup import Element, GroupTable

logger = logging.getLogger("pbeauville.engine")


@dataclass(frozen=True)
class SampledVerdict:
    """A yes/no answer that records whether it came from sampling instead of an exhaustive check."""
    holds: bool
    sampled: bool
    checked: int

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, unit: str = "pairs") -> str:
        return f"{self.checked} sampled {unit}" if self.sampled else f"all {self.checked} {unit}"


def pc_generators(G: GroupTable) -> list[Element]:
    return [G.unit(i) for i in range(G.n)]


def _closure(G: GroupTable, gens: Sequence[Element]) -> ElementSet:
    tables = G.tables
    if tables is not None:
        seen = np.zeros(G.order, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        gen_ranks = np.array([G.rank(g) for g in gens], dtype=np.int64)
        while frontier.size and gen_ranks.size:
            candidates = np.unique(tables.cayley[frontier[:, None], gen_ranks[None, :]].ravel())
            new = candidates[~seen[candidates]]
            seen[new] = True
            frontier = new
        return ElementSet(seen, subgroup=True)

    G.check_set_size()
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        h = queue.popleft()
        for g in gens:
            k = G.multiply(h, g)
            if k not in seen:
                seen.add(k)
                queue.append(k)
    return ElementSet.from_ranks(G.order, (G.rank(h) for h in seen), subgroup=True)


def subgroup_generated(G: GroupTable, gens: Iterable[Element]) -> ElementSet:
    """
    The smallest subgroup containing gens.

    Redundant generators are skipped: a candidate is only added when it lies
    outside the subgroup generated so far.
    """
    chosen: list[Element] = []
    current = ElementSet.from_ranks(G.order, [0], subgroup=True)
    for g in gens:
        if G.rank(g) not in current:
            chosen.append(g)
            current = _closure(G, chosen)
    return current


def _normal_closure(G: GroupTable, gens: Iterable[Element], ambient: Sequence[Element]):
    gens = [g for g in gens if g != G.identity]
    closure = subgroup_generated(G, gens)
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            for c in ambient:
                h = G.conjugate(g, c)
                if G.rank(h) not in closure:
                    gens.append(h)
                    closure = subgroup_generated(G, gens)
                    changed = True
    return closure, gens


def normal_closure(G: GroupTable, gens: Iterable[Element]) -> ElementSet:
    """Smallest normal subgroup of G containing gens."""
    return _normal_closure(G, gens, pc_generators(G))[0]


def lower_central_series(G: GroupTable) -> list[ElementSet]:
    """G = γ1 > γ2 > ... > {1}, with γ_{i+1} = [γ_i, G]."""

    def build():
        pc = pc_generators(G)
        series = [ElementSet.full(G.order)]
        gens = pc
        while len(series[-1]) > 1:
            commutators = [G.commutator(h, g) for h in gens for g in pc]
            term, gens = _normal_closure(G, commutators, pc)
            if term == series[-1]:
                break
            series.append(term)
        return series

    return G.cached("lower_central_series", build)


def derived_series(G: GroupTable) -> list[ElementSet]:
    def build():
        series = [ElementSet.full(G.order)]
        gens = pc_generators(G)
        while len(series[-1]) > 1:
            commutators = [G.commutator(a, b) for a, b in itertools.combinations(gens, 2)]
            term, gens = _normal_closure(G, commutators, gens)
            if term == series[-1]:
                break
            series.append(term)
        return series

    return G.cached("derived_series", build)


def derived(G: GroupTable) -> ElementSet:
    series = lower_central_series(G)
    return series[1] if len(series) > 1 else series[0]


def nilpotency_class(G: GroupTable) -> int:
    return len(lower_central_series(G)) - 1


def center(G: GroupTable) -> ElementSet:
    def build():
        tables = G.tables
        if tables is not None:
            bits = np.ones(G.order, dtype=bool)
            for g in pc_generators(G):
                r = G.rank(g)
                bits &= tables.cayley[:, r] == tables.cayley[r, :]
            return ElementSet(bits, subgroup=True)
        G.check_set_size()
        pc = pc_generators(G)
        central = (G.rank(u) for u in G.elements() if all(G.multiply(u, g) == G.multiply(g, u) for g in pc))
        return ElementSet.from_ranks(G.order, central, subgroup=True)

    return G.cached("center", build)


def power_set(G: GroupTable, k: int) -> ElementSet:
    """{g^k : g in G} as a plain set."""
    tables = G.tables
    if tables is not None:
        return ElementSet.from_ranks(G.order, np.unique(tables.power(np.arange(G.order), k)))
    G.check_set_size()
    return ElementSet.from_ranks(G.order, {G.rank(G.power_of(u, k)) for u in G.elements()})


def agemo(G: GroupTable, k: int) -> ElementSet:
    """G^{p^k}, the subgroup generated by all p^k-th powers."""

    def build():
        powers = power_set(G, G.prime ** k)
        return subgroup_generated(G, (G.unrank(int(r)) for r in powers.ranks()))

    return G.cached(("agemo", k), build)


def exponent_of(G: GroupTable) -> int:
    def build():
        tables = G.tables
        if tables is not None:
            return int(tables.orders.max())
        return max(G.order_of(u) for u in G.elements())

    return G.cached("exponent", build)


def subgroup_exponent(G: GroupTable, H: ElementSet) -> int:
    tables = G.tables
    if tables is not None:
        return int(tables.orders[H.ranks()].max())
    return max(G.order_of(G.unrank(int(r))) for r in H.ranks())


def is_powerful(G: GroupTable) -> bool:
    """G' <= G^p for odd p, G' <= G^4 for p = 2."""
    k = 2 if G.prime == 2 else 1
    return derived(G).issubset(agemo(G, k))


def orbit_with_transversal(
        G: GroupTable,
        point: Element,
        act: Callable[[Element, Element], Element],
        gens: Optional[Sequence[Element]] = None,
) -> dict[Element, Element]:
    """
    Orbit of point under a right action, as {orbit point: t} with act(point, t) == orbit point.

    Args:
        G: The acting group
        point: Starting point
        act: Right action, act(act(q, g), h) == act(q, g*h)
        gens: Generators of the acting group (pc generators by default)
    """
    gens = pc_generators(G) if gens is None else list(gens)
    transversal = {point: G.identity}
    queue = deque([point])
    while queue:
        q = queue.popleft()
        t = transversal[q]
        for g in gens:
            image = act(q, g)
            if image not in transversal:
                transversal[image] = G.multiply(t, g)
                queue.append(image)
    return transversal


def stabilizer(
        G: GroupTable,
        point: Element,
        act: Callable[[Element, Element], Element],
        transversal: Optional[dict[Element, Element]] = None,
) -> ElementSet:
    """Stabilizer of point from its Schreier generators."""
    gens = pc_generators(G)
    transversal = transversal or orbit_with_transversal(G, point, act, gens)
    schreier = []
    for q, t in transversal.items():
        for g in gens:
            s = G.multiply(G.multiply(t, g), G.invert(transversal[act(q, g)]))
            if s != G.identity:
                schreier.append(s)
    return subgroup_generated(G, schreier)


def centralizer(G: GroupTable, u: Element) -> ElementSet:
    tables = G.tables
    if tables is not None:
        r = G.rank(u)
        return ElementSet(tables.cayley[r, :] == tables.cayley[:, r], subgroup=True)
    return stabilizer(G, u, G.conjugate)


def conjugacy_class_labels(G: GroupTable) -> np.ndarray:
    """labels[r] = index of the conjugacy class of rank r, classes numbered by smallest member."""

    def build():
        tables = G.require_tables()
        labels = np.full(G.order, -1, dtype=np.int64)
        gen_ranks = [G.rank(g) for g in pc_generators(G)]
        label = 0
        for r in range(G.order):
            if labels[r] >= 0:
                continue
            labels[r] = label
            frontier = np.array([r])
            while frontier.size:
                images = np.unique(np.concatenate([tables.conj(frontier, g) for g in gen_ranks] or [frontier]))
                new = images[labels[images] < 0]
                labels[new] = label
                frontier = new
            label += 1
        return labels

    return G.cached("class_labels", build)


def conjugacy_class(G: GroupTable, u: Element) -> ElementSet:
    orbit = orbit_with_transversal(G, u, G.conjugate)
    return ElementSet.from_ranks(G.order, (G.rank(q) for q in orbit))


def cyclic_subgroup(G: GroupTable, u: Element) -> ElementSet:
    return ElementSet.from_ranks(G.order, _cyclic_ranks(G, u), subgroup=True)


def _cyclic_ranks(G: GroupTable, u: Element) -> list[int]:
    ranks, h = [0], u
    while h != G.identity:
        ranks.append(G.rank(h))
        h = G.multiply(h, u)
    return ranks


def is_regular(G: GroupTable, seed: int = 0) -> SampledVerdict:
    """
    Check (xy)^p = x^p y^p modulo (<x,y>')^p over all pairs, or over a seeded
    sample of pairs above regularity.exhaustive_order.
    """
    settings = G.settings.regularity
    p = G.prime
    sampled = G.order > settings.exhaustive_order
    if sampled:
        logger.warning(f"SamplingFallback: regularity of order {G.order} checked on {settings.samples} sampled pairs")
        rng = np.random.default_rng(seed)
        draws = rng.integers(0, G.order, size=(settings.samples, 2))
        pairs = [(G.unrank(int(a)), G.unrank(int(b))) for a, b in draws]
    else:
        pairs = list(itertools.product(G.elements(), repeat=2))

    for x, y in pairs:
        defect = G.multiply(G.invert(G.multiply(G.power_of(x, p), G.power_of(y, p))),
                            G.power_of(G.multiply(x, y), p))
        if defect == G.identity:
            continue
        commutator_subgroup, _ = _normal_closure(G, [G.commutator(x, y)], [x, y])
        powers = (G.power_of(G.unrank(int(r)), p) for r in commutator_subgroup.ranks())
        if G.rank(defect) not in subgroup_generated(G, powers):
            return SampledVerdict(False, sampled, len(pairs))
    return SampledVerdict(True, sampled, len(pairs))


def is_metacyclic(G: GroupTable) -> bool:
    """Some cyclic normal subgroup has a cyclic quotient."""
    from pbeauville.engine.frattini import frattini_quotient

    quotient = frattini_quotient(G)
    if quotient.dim <= 1:
        return True
    if quotient.dim > 2:
        return False
    pc = pc_generators(G)
    for u in G.elements():
        if not any(quotient.coords(u)):
            continue
        cyclic = cyclic_subgroup(G, u)
        if all(G.rank(G.conjugate(u, g)) in cyclic for g in pc):
            return True
    return False


class CharacteristicSubgroups:
    """Characteristic subgroups and invariants of one group, cached on the group."""

    def __init__(self, G: GroupTable):
        self.G = G

    def frattini(self) -> ElementSet:
        from pbeauville.engine.frattini import frattini
        return frattini(self.G)

    def center(self) -> ElementSet:
        return center(self.G)

    def derived(self) -> ElementSet:
        return derived(self.G)

    def agemo(self, k: int) -> ElementSet:
        return agemo(self.G, k)

    def exponent_of(self) -> int:
        return exponent_of(self.G)

    def nilpotency_class(self) -> int:
        return nilpotency_class(self.G)

    def is_powerful(self) -> bool:
        return is_powerful(self.G)

    def is_regular(self, seed: int = 0) -> SampledVerdict:
        return is_regular(self.G, seed)

    def centralizer(self, u: Element) -> ElementSet:
        return centralizer(self.G, u)


def characteristic_subgroups(G: GroupTable) -> CharacteristicSubgroups:
    return CharacteristicSubgroups(G)
