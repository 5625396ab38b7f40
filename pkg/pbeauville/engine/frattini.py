"""
Frattini quotient
Straight-line words for pc generators and linear coordinates on G/Φ(G)
"""
import itertools
import logging
from collections import deque
from typing import Callable, Optional, TypeVar

import numpy as np

from pbeauville.engine.elementset import ElementSet
from pbeauville.engine.pcgroup import Element, GroupTable
from pbeauville.engine.presentation import Definition
from pbeauville.engine.subgroups import agemo, derived, pc_generators, subgroup_generated
from pbeauville.errors import InconsistentPresentation

logger = logging.getLogger("pbeauville.engine")

T = TypeVar("T")


def _search_words(G: GroupTable, targets: set[int]) -> dict[int, Definition]:
    # Breadth-first search from the identity by right multiplication with the
    # distinguished generators and their inverses.
    d = G.pres.distinguished_indices()
    steps = [(d[0], 1), (d[0], -1), (d[1], 1), (d[1], -1)]
    step_elements = [G.power_of(G.unit(i), e) for i, e in steps]
    parent: dict[Element, Optional[tuple[Element, int]]] = {G.identity: None}
    queue = deque([G.identity])
    wanted = {G.unit(k): k for k in targets}
    found: dict[int, Definition] = {}
    while queue and len(found) < len(wanted):
        h = queue.popleft()
        for s, g in enumerate(step_elements):
            k = G.multiply(h, g)
            if k in parent:
                continue
            parent[k] = (h, s)
            queue.append(k)
            if k in wanted:
                word = []
                node = k
                while parent[node] is not None:
                    node, step = parent[node]
                    word.append(("pow",) + steps[step])
                found[wanted[k]] = tuple(reversed(word))
    return found


def generator_recipes(G: GroupTable) -> list[tuple[int, Definition]]:
    """
    How to rebuild every pc generator from the distinguished pair.

    Returns (index, definition) pairs in evaluation order: the distinguished
    generators first, then definitions from the presentation, then words found
    by breadth-first search for anything left over.
    """

    def build():
        if G.distinguished is None:
            raise ValueError("group has no distinguished generating pair")
        d = G.pres.distinguished_indices()
        recipes = [(i, (("pow", i, 1),)) for i in d]
        known = set(d)
        for k in sorted(G.pres.definitions):
            if k not in known:
                recipes.append((k, G.pres.definitions[k]))
                known.add(k)
        missing = set(range(G.n)) - known
        if missing:
            found = _search_words(G, missing)
            if len(found) < len(missing):
                raise InconsistentPresentation("distinguished pair does not generate the group")
            recipes += sorted(found.items())
            logger.debug(f"Recovered words for {len(found)} pc generators by search")

        values = evaluate_recipes(recipes, G.distinguished, G.multiply, G.invert, G.power_of, G.commutator, d)
        for k, _ in recipes:
            if values[k] != G.unit(k):
                raise InconsistentPresentation(f"definition of {G.gens[k]} does not hold")
        return recipes

    return G.cached("recipes", build)


def evaluate_recipes(
        recipes: list[tuple[int, Definition]],
        images: tuple[T, T],
        multiply: Callable[[T, T], T],
        invert: Callable[[T], T],
        power: Callable[[T, int], T],
        commutator: Callable[[T, T], T],
        distinguished: tuple[int, int],
) -> dict[int, T]:
    """Evaluate recipes with the distinguished generators replaced by images, in any group-like arithmetic."""
    values: dict[int, T] = {distinguished[0]: images[0], distinguished[1]: images[1]}
    for k, definition in recipes:
        if k in distinguished:
            continue
        result = None
        for kind, a, b in definition:
            term = commutator(values[a], values[b]) if kind == "comm" else power(values[a], b)
            result = term if result is None else multiply(result, term)
        values[k] = result
    return values


class FrattiniQuotient:
    """
    The linear map G -> G/Φ(G) ≅ (Z/p)^dim.

    Because the quotient is elementary abelian, an element g_1^{e_1}...g_n^{e_n}
    has coordinates sum(e_k * gen_coords[k]) mod p.
    """

    def __init__(self, G: GroupTable, gen_coords: np.ndarray, basis: list[Element]):
        self.G = G
        self.prime = G.prime
        self.gen_coords = gen_coords % G.prime
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.gen_coords.shape[1]

    def coords(self, u: Element) -> tuple[int, ...]:
        vec = np.asarray(u, dtype=np.int64) @ self.gen_coords if self.G.n else np.zeros(self.dim, dtype=np.int64)
        return tuple(int(c) for c in vec % self.prime)

    def coords_of_ranks(self, ranks: np.ndarray) -> np.ndarray:
        exps = self.G.exponent_matrix()[ranks]
        return (exps @ self.gen_coords) % self.prime

    def all_coords(self) -> np.ndarray:
        return (self.G.exponent_matrix() @ self.gen_coords) % self.prime

    def spans(self, *elements: Element) -> bool:
        """True iff the images of elements span G/Φ(G), i.e. the elements generate G."""
        rows = [self.coords(u) for u in elements]
        return _rank_mod_p(rows, self.prime) == self.dim


def _rank_mod_p(rows: list[tuple[int, ...]], p: int) -> int:
    matrix = [list(r) for r in rows]
    rank = 0
    cols = len(matrix[0]) if matrix else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][c] % p), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inv = pow(matrix[rank][c], -1, p)
        matrix[rank] = [v * inv % p for v in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][c] % p:
                f = matrix[r][c]
                matrix[r] = [(v - f * w) % p for v, w in zip(matrix[r], matrix[rank])]
        rank += 1
    return rank


def _distinguished_coords(G: GroupTable) -> Optional[np.ndarray]:
    # Exponent sums of the recipes give a candidate map onto (Z/p)^2; it is the
    # Frattini quotient exactly when every pc relation maps to zero.
    p = G.prime
    zero = np.zeros(2, dtype=np.int64)
    values = evaluate_recipes(
        generator_recipes(G),
        (np.array([1, 0], dtype=np.int64), np.array([0, 1], dtype=np.int64)),
        multiply=lambda a, b: (a + b) % p,
        invert=lambda a: (-a) % p,
        power=lambda a, e: (a * e) % p,
        commutator=lambda a, b: zero,
        distinguished=G.pres.distinguished_indices(),
    )
    coords = np.array([values[k] for k in range(G.n)], dtype=np.int64).reshape(G.n, 2)

    def word_coords(word):
        total = zero.copy()
        for k, e in word:
            total += e * coords[k]
        return total % p

    for i in range(G.n):
        if ((G.rel_orders[i] * coords[i] - word_coords(G.pres.power_rels.get(i, ()))) % p).any():
            return None
        for j in range(i + 1, G.n):
            if ((coords[j] - word_coords(G.pres.conj_rels.get((i, j), ((j, 1),)))) % p).any():
                return None
    return coords


def _generic_coords(G: GroupTable) -> tuple[np.ndarray, list[Element]]:
    phi = product_of_normal_subgroups(G, derived(G), agemo(G, 1))
    p = G.prime
    basis: list[Element] = []
    rows: list[list[int]] = []
    for k, g in enumerate(pc_generators(G)):
        coords = None
        for alpha in itertools.product(range(p), repeat=len(basis)):
            combo = G.product(G.power_of(b, a) for b, a in zip(basis, alpha))
            if G.rank(G.multiply(g, G.invert(combo))) in phi:
                coords = list(alpha)
                break
        if coords is None:
            basis.append(g)
            coords = [0] * (len(basis) - 1) + [1]
        rows.append(coords)
    dim = len(basis)
    matrix = np.zeros((G.n, dim), dtype=np.int64)
    for k, row in enumerate(rows):
        matrix[k, :len(row)] = row
    return matrix, basis


def product_of_normal_subgroups(G: GroupTable, A: ElementSet, B: ElementSet) -> ElementSet:
    """A·B for normal subgroups A and B."""
    tables = G.tables
    if tables is not None:
        products = tables.cayley[A.ranks()[:, None], B.ranks()[None, :]].ravel()
        return ElementSet.from_ranks(G.order, np.unique(products), subgroup=True)
    gens = [G.unrank(int(r)) for r in itertools.chain(A.ranks(), B.ranks())]
    return subgroup_generated(G, gens)


def frattini_quotient(G: GroupTable) -> FrattiniQuotient:
    def build():
        coords = None
        if G.distinguished is not None:
            coords = _distinguished_coords(G)
        if coords is not None:
            return FrattiniQuotient(G, coords, list(G.distinguished))
        logger.debug("Frattini quotient not spanned freely by the distinguished pair, computing Φ(G) directly")
        matrix, basis = _generic_coords(G)
        return FrattiniQuotient(G, matrix, basis)

    return G.cached("frattini_quotient", build)


def frattini(G: GroupTable) -> ElementSet:
    """Φ(G) as the kernel of the Frattini quotient map."""

    def build():
        quotient = frattini_quotient(G)
        G.check_set_size()
        if quotient.dim == 0:
            return ElementSet.full(G.order)
        bits = ~quotient.all_coords().any(axis=1)
        return ElementSet(bits, subgroup=True)

    return G.cached("frattini", build)
