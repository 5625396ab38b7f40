"""
Polycyclic group engine
Collected normal-form arithmetic for finite p-groups given by a pc presentation
"""
import itertools
import logging
import math
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from pbeauville.config import Settings, get_settings
from pbeauville.engine.presentation import PcPresentation, Word
from pbeauville.engine.tables import build_tables
from pbeauville.errors import InconsistentPresentation, TooLarge

logger = logging.getLogger("pbeauville.engine")

# Exponent vector of the collected word g_1^{e_1} ... g_n^{e_n}.
Element = tuple[int, ...]


class GroupTable:
    """
    A finite p-group built from a consistent pc presentation.

    Elements are exponent vectors. Arithmetic is collection from the left; once
    the numpy rank tables are materialized (see `tables`) multiply, invert and
    order_of read from them instead. All caches are write-once, so a built
    group can be shared freely, including across worker processes.
    """

    def __init__(self, pres: PcPresentation, settings: Optional[Settings] = None, params: Any = None):
        self.pres = pres
        self.settings = settings or get_settings()
        self.params = params
        self.prime = pres.prime
        self.gens = pres.gens
        self.rel_orders = pres.rel_orders
        self.n = len(pres.gens)
        self.order = math.prod(self.rel_orders)
        self.identity: Element = (0,) * self.n

        weights = [1] * self.n
        for i in range(self.n - 2, -1, -1):
            weights[i] = weights[i + 1] * self.rel_orders[i + 1]
        self._weights = tuple(weights)

        self._power: list[Element] = [self.identity] * self.n
        self._conj: dict[tuple[int, int], Element] = {}
        self._image_powers: dict[tuple[int, int, int], Element] = {}
        self._conj_cache: list[dict[Element, Element]] = [{} for _ in range(self.n)]
        self._tables = None
        self._cache: dict[Any, Any] = {}
        self._evaluate_relations()

        self.named: dict[str, Element] = {g: self.unit(i) for i, g in enumerate(self.gens)}
        self.distinguished: Optional[tuple[Element, Element]] = None
        if pres.distinguished:
            first, second = pres.distinguished_indices()
            self.distinguished = (self.unit(first), self.unit(second))

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order}, gens={self.gens})"

    # -- presentation -----------------------------------------------------

    def _evaluate_relations(self):
        # Relations of g_i only involve later generators, so evaluating from the
        # last generator backwards always multiplies in an already-known subgroup.
        for i in range(self.n - 1, -1, -1):
            self._power[i] = self.evaluate_word(self.pres.power_rels.get(i, ()))
            for j in range(i + 1, self.n):
                word = self.pres.conj_rels.get((i, j), ((j, 1),))
                self._conj[(i, j)] = self.evaluate_word(word)

    def unit(self, i: int, e: int = 1) -> Element:
        """The element g_i^e for 0 <= e < r_i."""
        exps = [0] * self.n
        exps[i] = e
        return tuple(exps)

    def evaluate_word(self, word: Word) -> Element:
        """Collect a word of (generator index, exponent) factors."""
        result = self.identity
        for k, e in word:
            if 0 <= e < self.rel_orders[k]:
                factor = self.unit(k, e)
            else:
                factor = self.power_of(self.unit(k), e)
            result = self._collect(result, factor)
        return result

    def element(self, text: str) -> Element:
        """Parse a word such as "x y^2 z^-1" written in generator names or named elements."""
        result = self.identity
        for token in text.split():
            name, _, exp = token.partition("^")
            if name not in self.named:
                raise ValueError(f"Unknown generator: {name}")
            result = self.multiply(result, self.power_of(self.named[name], int(exp or 1)))
        return result

    # -- ranks ------------------------------------------------------------

    def rank(self, u: Element) -> int:
        return sum(e * w for e, w in zip(u, self._weights))

    def unrank(self, r: int) -> Element:
        return tuple((r // w) % m for w, m in zip(self._weights, self.rel_orders))

    def elements(self) -> Iterator[Element]:
        """All elements in rank order."""
        return itertools.product(*(range(r) for r in self.rel_orders))

    def is_element(self, u: Sequence[int]) -> bool:
        return len(u) == self.n and all(0 <= e < r for e, r in zip(u, self.rel_orders))

    # -- collection -------------------------------------------------------

    def _collect(self, u: Element, v: Element) -> Element:
        w = u
        for j, c in enumerate(v):
            if c:
                w = self._times_generator_power(w, j, c)
        return w

    def _times_generator_power(self, w: Element, j: int, c: int) -> Element:
        # w * g_j^c where 0 < c < r_j: move g_j^c left past the tail of w.
        tail = w[j + 1:]
        if any(tail):
            shifted = (0,) * (j + 1) + tail
            for _ in range(c):
                shifted = self._conjugate_by_generator(shifted, j)
            tail = shifted[j + 1:]
        s = w[j] + c
        if s >= self.rel_orders[j]:
            s -= self.rel_orders[j]
            tail = self._collect(self._power[j], (0,) * (j + 1) + tail)[j + 1:]
        return w[:j] + (s,) + tail

    def _conjugate_by_generator(self, x: Element, j: int) -> Element:
        # x^{g_j} for x supported on generators after j.
        cache = self._conj_cache[j]
        hit = cache.get(x)
        if hit is not None:
            return hit
        result = self.identity
        for k in range(j + 1, self.n):
            if x[k]:
                result = self._collect(result, self._generator_image_power(j, k, x[k]))
        cache[x] = result
        return result

    def _generator_image_power(self, j: int, k: int, e: int) -> Element:
        key = (j, k, e)
        hit = self._image_powers.get(key)
        if hit is None:
            hit = self._power_collect(self._conj[(j, k)], e)
            self._image_powers[key] = hit
        return hit

    def _power_collect(self, u: Element, k: int) -> Element:
        result, base = self.identity, u
        while k:
            if k & 1:
                result = self._collect(result, base)
            base = self._collect(base, base)
            k >>= 1
        return result

    # -- arithmetic -------------------------------------------------------

    def multiply(self, u: Element, v: Element) -> Element:
        if self._tables is not None:
            return self.unrank(int(self._tables.cayley[self.rank(u), self.rank(v)]))
        return self._collect(u, v)

    def invert(self, u: Element) -> Element:
        if self._tables is not None:
            return self.unrank(int(self._tables.inverse[self.rank(u)]))
        # Clear exponents left to right: u * g_j^{r_j - e_j} zeroes position j.
        w, inverse = u, self.identity
        for j in range(self.n):
            e = w[j]
            if e:
                step = self.unit(j, self.rel_orders[j] - e)
                w = self._collect(w, step)
                inverse = self._collect(inverse, step)
        return inverse

    def power_of(self, u: Element, k: int) -> Element:
        """u^k by square-and-multiply on |k|, inverted for negative k."""
        result, base, m = self.identity, u, abs(k)
        while m:
            if m & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            m >>= 1
        return self.invert(result) if k < 0 else result

    def conjugate(self, u: Element, g: Element) -> Element:
        """u^g = g^-1 u g."""
        return self.multiply(self.multiply(self.invert(g), u), g)

    def commutator(self, u: Element, v: Element) -> Element:
        """[u, v] = u^-1 v^-1 u v."""
        return self.multiply(self.invert(self.multiply(v, u)), self.multiply(u, v))

    def order_of(self, u: Element) -> int:
        if self._tables is not None:
            return int(self._tables.orders[self.rank(u)])
        order = 1
        while u != self.identity:
            u = self.power_of(u, self.prime)
            order *= self.prime
        return order

    def product(self, factors: Iterable[Element]) -> Element:
        result = self.identity
        for u in factors:
            result = self.multiply(result, u)
        return result

    # -- caches -----------------------------------------------------------

    @property
    def tables(self):
        """Numpy rank tables, built on first use when |G| <= limits.table_order, else None."""
        if self._tables is None and self.order <= self.settings.limits.table_order:
            self._tables = build_tables(self)
            logger.info(f"✓ Materialized rank tables for group of order {self.order}")
        return self._tables

    def require_tables(self):
        tables = self.tables
        if tables is None:
            raise TooLarge(f"group of order {self.order} exceeds table cap {self.settings.limits.table_order}")
        return tables

    def cached(self, key: Any, factory: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    def check_set_size(self):
        if self.order > self.settings.limits.max_order:
            raise TooLarge(f"element sets are disabled above order {self.settings.limits.max_order}")

    def exponent_matrix(self) -> np.ndarray:
        """(|G|, n) array of exponent vectors in rank order."""
        self.check_set_size()

        def build():
            if self.n == 0:
                return np.zeros((1, 0), dtype=np.int64)
            grids = np.indices(self.rel_orders, dtype=np.int64)
            return grids.reshape(self.n, -1).T.copy()

        return self.cached("exponent_matrix", build)

    def rank_vector(self, exps: np.ndarray) -> np.ndarray:
        """Ranks of the rows of an exponent array."""
        return exps @ np.asarray(self._weights, dtype=np.int64)


# ---------------------------------------------------------------------------
# Building and consistency
# ---------------------------------------------------------------------------

def _relation_failures(G: GroupTable) -> Iterator[str]:
    pres = G.pres
    for i in range(G.n):
        lhs = G.identity
        g = G.unit(i)
        for _ in range(G.rel_orders[i]):
            lhs = G._collect(lhs, g)
        rhs = G.evaluate_word(pres.power_rels.get(i, ()))
        if lhs != rhs:
            yield f"power relation of {G.gens[i]}"
    for i in range(G.n):
        gi = G.unit(i)
        for j in range(i + 1, G.n):
            lhs = G._collect(G._collect(G.invert(gi), G.unit(j)), gi)
            rhs = G.evaluate_word(pres.conj_rels.get((i, j), ((j, 1),)))
            if lhs != rhs:
                yield f"conjugate relation {G.gens[j]}^{G.gens[i]}"


def _overlap_failures(G: GroupTable) -> Iterator[str]:
    def assoc(a, b, c):
        return G._collect(G._collect(a, b), c) == G._collect(a, G._collect(b, c))

    n = G.n
    for i in range(n):
        gi = G.unit(i)
        top_i = G.unit(i, G.rel_orders[i] - 1)
        for j in range(i + 1, n):
            gj = G.unit(j)
            for k in range(j + 1, n):
                if not assoc(G.unit(k), gj, gi):
                    yield f"overlap {G.gens[k]} {G.gens[j]} {G.gens[i]}"
            if not assoc(G.unit(j, G.rel_orders[j] - 1), gj, gi):
                yield f"overlap {G.gens[j]}^{G.rel_orders[j]} {G.gens[i]}"
            if not assoc(gj, top_i, gi):
                yield f"overlap {G.gens[j]} {G.gens[i]}^{G.rel_orders[i]}"
        if not assoc(gi, top_i, gi):
            yield f"overlap {G.gens[i]}^{G.rel_orders[i] + 1}"


def _table_associativity_failures(G: GroupTable, tables) -> Iterator[str]:
    cayley = tables.cayley
    for i in range(G.n):
        row = cayley[G.rank(G.unit(i))]
        bad = np.argwhere(cayley[row] != row[cayley])
        if len(bad):
            x, y = (G.unrank(int(r)) for r in bad[0])
            yield f"associativity at {G.gens[i]}, {x}, {y}"
            return


def _associativity_failures(G: GroupTable) -> Iterator[str]:
    """(g_i x) y = g_i (x y) on every triple up to consistency.exhaustive_order, on seeded random triples above."""
    settings = G.settings.consistency
    if G.order <= settings.exhaustive_order:
        tables = G.tables
        if tables is not None:
            yield from _table_associativity_failures(G, tables)
            return
        triples = ((i, x, y) for x, y in itertools.product(G.elements(), repeat=2) for i in range(G.n))
    else:
        rng = np.random.default_rng(0)
        gens = rng.integers(0, G.n, size=settings.samples)
        draws = rng.integers(0, G.order, size=(settings.samples, 2))
        triples = ((int(i), G.unrank(int(a)), G.unrank(int(b))) for i, (a, b) in zip(gens, draws))
    for i, x, y in triples:
        g = G.unit(i)
        if G._collect(G._collect(g, x), y) != G._collect(g, G._collect(x, y)):
            yield f"associativity at {G.gens[i]}, {x}, {y}"
            return


def check_consistency(G: GroupTable):
    """Raise InconsistentPresentation if the presentation collapses."""
    for failures in (_relation_failures(G), _overlap_failures(G), _associativity_failures(G)):
        first = next(failures, None)
        if first is not None:
            raise InconsistentPresentation(f"Inconsistent presentation: {first} fails")


def build_group(pres: PcPresentation, settings: Optional[Settings] = None, params: Any = None) -> GroupTable:
    """
    Build and check the group of a pc presentation.

    Args:
        pres: A syntactically valid presentation
        settings: Size caps and consistency check sizes (defaults to the loaded config)
        params: Family parameters the presentation came from, if any
    """
    settings = settings or get_settings()
    order = pres.order
    if order > settings.limits.max_order:
        raise TooLarge(f"group order {order} exceeds cap {settings.limits.max_order}")
    G = GroupTable(pres, settings=settings, params=params)
    check_consistency(G)
    logger.info(f"✓ Built group of order {order} on generators {' '.join(pres.gens) or '(none)'}")
    return G
