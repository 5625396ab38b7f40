"""
Automorphisms
Extension from generator images, brute-force Aut(G), and the parametrized families
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from pbeauville.beauville.sigma import spanning_mask
from pbeauville.engine.frattini import evaluate_recipes, frattini_quotient, generator_recipes
from pbeauville.engine.pcgroup import Element, GroupTable
from pbeauville.engine.presentation import Word
from pbeauville.engine.subgroups import derived
from pbeauville.errors import InvalidParams, NotInFamily, TooLarge
from pbeauville.families.params import Abelian, Class2Beauville, Metacyclic, TriangleQuotient
from pbeauville.parallel import ordered_map

logger = logging.getLogger("pbeauville.strongreal")


@dataclass(frozen=True)
class Automorphism:
    """An automorphism given by the images of the pc generators."""
    images: tuple[Element, ...]
    group: GroupTable = field(compare=False, repr=False)

    def apply(self, u: Element) -> Element:
        G = self.group
        result = G.identity
        for image, e in zip(self.images, u):
            if e:
                result = G.multiply(result, G.power_of(image, e))
        return result

    def permutation(self) -> np.ndarray:
        """perm[r] = rank of the image of unrank(r)."""

        def build():
            G = self.group
            tables = G.require_tables()
            exps = G.exponent_matrix()
            perm = np.zeros(G.order, dtype=np.int64)
            for k, image in enumerate(self.images):
                powers = np.array([G.rank(G.power_of(image, e)) for e in range(G.rel_orders[k])], dtype=np.int64)
                perm = tables.cayley[perm, powers[exps[:, k]]]
            return perm

        return self.group.cached(("permutation", self.images), build)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self ∘ other."""
        return Automorphism(tuple(self.apply(image) for image in other.images), self.group)

    def inverse(self) -> "Automorphism":
        G = self.group
        if G.tables is not None:
            inv = np.empty(G.order, dtype=np.int64)
            inv[self.permutation()] = np.arange(G.order)
            return Automorphism(tuple(G.unrank(int(inv[G.rank(G.unit(k))])) for k in range(G.n)), G)
        power = self
        while True:
            following = self.compose(power)
            if following.is_identity():
                return power
            power = following

    def is_identity(self) -> bool:
        return all(image == self.group.unit(k) for k, image in enumerate(self.images))

    def order(self) -> int:
        power, k = self, 1
        while not power.is_identity():
            power, k = self.compose(power), k + 1
        return k

    def to_json(self) -> list[list[int]]:
        return [list(image) for image in self.images]

    @classmethod
    def from_json(cls, G: GroupTable, data: list[list[int]]) -> "Automorphism":
        images = tuple(tuple(int(e) for e in image) for image in data)
        if len(images) != G.n or not all(G.is_element(u) for u in images):
            raise ValueError("automorphism needs one valid element per pc generator")
        return cls(images, G)


def _evaluate(G: GroupTable, images: tuple[Element, ...], word: Word) -> Element:
    result = G.identity
    for k, e in word:
        result = G.multiply(result, G.power_of(images[k], e))
    return result


def relations_hold(G: GroupTable, images: tuple[Element, ...]) -> bool:
    """Do the images satisfy every power and conjugate relation of the pc presentation?"""
    pres = G.pres
    for i in range(G.n):
        if G.power_of(images[i], G.rel_orders[i]) != _evaluate(G, images, pres.power_rels.get(i, ())):
            return False
        for j in range(i + 1, G.n):
            if G.conjugate(images[j], images[i]) != _evaluate(G, images, pres.conj_rels.get((i, j), ((j, 1),))):
                return False
    return True


def extend_to_automorphism(G: GroupTable, image_x: Element, image_y: Element) -> Optional[Automorphism]:
    """
    The automorphism sending the distinguished pair to (image_x, image_y), if there is one.

    Derived pc generators map to their defining words evaluated on the images; the
    result is accepted only if the images generate G and satisfy every pc relation.
    """
    if not frattini_quotient(G).spans(image_x, image_y):
        return None
    values = evaluate_recipes(
        generator_recipes(G), (image_x, image_y),
        G.multiply, G.invert, G.power_of, G.commutator, G.pres.distinguished_indices(),
    )
    images = tuple(values[k] for k in range(G.n))
    if not relations_hold(G, images):
        return None
    return Automorphism(images, G)


def _extend_many(G: GroupTable, x_rank: int, y_ranks: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
    # Vectorized extend_to_automorphism over many candidate images of the second generator.
    tables = G.require_tables()
    quotient = frattini_quotient(G)
    coords = quotient.all_coords()
    xs = np.full(len(y_ranks), x_rank, dtype=np.int64)
    values = evaluate_recipes(
        generator_recipes(G), (xs, y_ranks),
        tables.mul, tables.inv, tables.power, tables.comm, G.pres.distinguished_indices(),
    )
    images = [np.broadcast_to(values[k], xs.shape) for k in range(G.n)]

    def evaluate(word):
        result = np.zeros(len(xs), dtype=np.int64)
        for k, e in word:
            result = tables.cayley[result, tables.power(images[k], e)]
        return result

    ok = spanning_mask(quotient, coords[x_rank], coords[y_ranks])
    pres = G.pres
    for i in range(G.n):
        ok &= tables.power(images[i], G.rel_orders[i]) == evaluate(pres.power_rels.get(i, ()))
        for j in range(i + 1, G.n):
            ok &= tables.conj(images[j], images[i]) == evaluate(pres.conj_rels.get((i, j), ((j, 1),)))
    return ok, images


def _scan_images(job) -> list[tuple[int, ...]]:
    G, x_ranks, y_ranks = job
    found = []
    for x in x_ranks:
        ok, images = _extend_many(G, int(x), y_ranks)
        for col in np.flatnonzero(ok):
            found.append(tuple(int(images[k][col]) for k in range(G.n)))
    return found


def brute_force_automorphisms(G: GroupTable, workers: int = 1) -> list[Automorphism]:
    """
    Aut(G) by scanning every candidate image pair of the distinguished generators.

    Candidates are restricted to elements of the right orders. The result is sorted
    by the ranks of the images, independently of the worker count.
    """
    if G.order > G.settings.limits.automorphism_scan_order:
        raise TooLarge(f"automorphism scan is capped at order {G.settings.limits.automorphism_scan_order}")
    tables = G.require_tables()
    d1, d2 = G.distinguished
    xs = np.flatnonzero(tables.orders == G.order_of(d1))
    ys = np.flatnonzero(tables.orders == G.order_of(d2))
    chunks = [(G, xs[s:s + 16], ys) for s in range(0, len(xs), 16)]
    found = [row for block in ordered_map(_scan_images, chunks, workers) for row in block]
    found.sort()
    automorphisms = [Automorphism(tuple(G.unrank(r) for r in row), G) for row in found]
    logger.info(f"✓ Found {len(automorphisms)} automorphisms of group of order {G.order}")
    return automorphisms


def inversion_automorphism(G: GroupTable) -> Optional[Automorphism]:
    """x -> x^-1, y -> y^-1 on the distinguished pair, when that extends."""
    d1, d2 = G.distinguished
    return extend_to_automorphism(G, G.invert(d1), G.invert(d2))


def identity_automorphism(G: GroupTable) -> Automorphism:
    return Automorphism(tuple(G.unit(k) for k in range(G.n)), G)


# ---------------------------------------------------------------------------
# Parametrized families
# ---------------------------------------------------------------------------

def _require_family(G: GroupTable, family) -> None:
    if not isinstance(G.params, family):
        raise NotInFamily(f"needs a group from the {family.__name__} family")


def metacyclic_aut_images(G: GroupTable, m: int, n: int, r: int, s: int) -> tuple[Element, Element]:
    """Images a -> b^{m p^{e-i}} a^n, b -> b^{1 + r p^{e-i}} a^s."""
    _require_family(G, Metacyclic)
    params = G.params
    p, e, i = params.p, params.e, params.i
    if not (1 <= m <= p ** i and 1 <= r <= p ** i and 1 <= n <= p ** e and 1 <= s <= p ** e):
        raise InvalidParams(f"metacyclic automorphism parameters out of range: m={m}, n={n}, r={r}, s={s}")
    if n % p == 0:
        raise InvalidParams(f"metacyclic automorphism needs p not dividing n, got n={n}")
    a, b = G.named["a"], G.named["b"]
    pw, mul = G.power_of, G.multiply
    step = p ** (e - i)
    return mul(pw(b, m * step), pw(a, n)), mul(pw(b, 1 + r * step), pw(a, s))


def metacyclic_aut(G: GroupTable, m: int, n: int, r: int, s: int) -> Automorphism:
    theta = extend_to_automorphism(G, *metacyclic_aut_images(G, m, n, r, s))
    if theta is None:
        raise InvalidParams(f"metacyclic map ({m}, {n}, {r}, {s}) does not extend to an automorphism")
    return theta


def metacyclic_aut_family(G: GroupTable) -> Iterator[tuple[tuple[int, int, int, int], Optional[Automorphism]]]:
    """Every parameter tuple of the metacyclic family with its automorphism (None if it fails to extend)."""
    _require_family(G, Metacyclic)
    p, e, i = G.params.p, G.params.e, G.params.i
    for m, r in itertools.product(range(1, p ** i + 1), repeat=2):
        for n in range(1, p ** e + 1):
            if n % p == 0:
                continue
            for s in range(1, p ** e + 1):
                yield (m, n, r, s), extend_to_automorphism(G, *metacyclic_aut_images(G, m, n, r, s))


def _check_class2_family(G: GroupTable) -> Class2Beauville:
    _require_family(G, Class2Beauville)
    params = G.params
    if not 0 < params.k < params.j:
        raise NotInFamily("class-2 automorphism family needs 0 < k < j")
    return params


def class2_aut_images(G: GroupTable, m: int, n: int, r: int, s: int, c_a: Element, c_b: Element) -> tuple[Element, Element]:
    """Images a -> a^{1 + m p^{e-i}} b^n c_a, b -> a^{r p^{e-i}} b^s c_b with c_a, c_b in G'."""
    params = _check_class2_family(G)
    p, e, i = params.p, params.e, params.i
    bound = p ** i
    if not all(1 <= v <= bound for v in (m, n, r, s)):
        raise InvalidParams(f"class-2 automorphism parameters must lie in [1, {bound}]")
    if s % p == 0:
        raise InvalidParams(f"class-2 automorphism needs p not dividing s, got s={s}")
    commutators = derived(G)
    if G.rank(c_a) not in commutators or G.rank(c_b) not in commutators:
        raise InvalidParams("c_a and c_b must lie in the derived subgroup")
    a, b = G.named["a"], G.named["b"]
    pw, prod = G.power_of, G.product
    step = p ** (e - i)
    return prod([pw(a, 1 + m * step), pw(b, n), c_a]), prod([pw(a, r * step), pw(b, s), c_b])


def class2_aut(G: GroupTable, m: int, n: int, r: int, s: int, c_a: Element, c_b: Element) -> Automorphism:
    theta = extend_to_automorphism(G, *class2_aut_images(G, m, n, r, s, c_a, c_b))
    if theta is None:
        raise InvalidParams("class-2 map does not extend to an automorphism")
    return theta


def class2_family_parameters(G: GroupTable, theta: Automorphism) -> Optional[tuple[int, int, int, int, Element, Element]]:
    """
    Parameters (m, n, r, s, c_a, c_b) putting theta in the class-2 family, or None.

    Reads the normal forms a^α b^β c^γ of θ(a) and θ(b): membership means
    α ≡ 1 and α' ≡ 0 modulo p^{e-i} with p not dividing β'.
    """
    params = _check_class2_family(G)
    p, e, i, k = params.p, params.e, params.i, params.k
    step, bound = p ** (e - i), p ** i
    (alpha, beta, gamma) = theta.apply(G.named["a"])
    (alpha2, beta2, gamma2) = theta.apply(G.named["b"])
    if (alpha - 1) % step or alpha2 % step or beta2 % p == 0:
        return None
    c = G.unit(2)
    m = (alpha - 1) // step or bound
    r = alpha2 // step or bound
    n = beta or bound
    # b^{p^i} = c^{p^k}, so n = p^i moves c^{p^k} out of c_a.
    c_a = G.power_of(c, gamma - (p ** k if beta == 0 else 0))
    c_b = G.power_of(c, gamma2)
    return m, n, r, beta2, c_a, c_b


def class2_aut_family(G: GroupTable, residues_only: bool = True) -> Iterator[tuple[tuple, Optional[Automorphism]]]:
    """
    Parameter tuples of the class-2 family with their automorphisms.

    With residues_only, m, n, r, s run over 1..p and c_a = c_b = 1; the induced
    action on G/Φ(G) depends only on n and s modulo p, so this covers every
    induced matrix of the family.
    """
    params = _check_class2_family(G)
    p = params.p
    top = p if residues_only else p ** params.i
    commutators = [G.identity] if residues_only else [G.unrank(int(r)) for r in derived(G).ranks()]
    for m, n, r, s in itertools.product(range(1, top + 1), repeat=4):
        if s % p == 0:
            continue
        for c_a, c_b in itertools.product(commutators, repeat=2):
            images = class2_aut_images(G, m, n, r, s, c_a, c_b)
            yield (m, n, r, s, c_a, c_b), extend_to_automorphism(G, *images)


def induced_matrix_mod_frattini(G: GroupTable, theta: Automorphism) -> tuple[tuple[int, int], tuple[int, int]]:
    """Matrix of θ on G/Φ(G) in the distinguished basis; column c holds the image of the c-th generator."""
    quotient = frattini_quotient(G)
    if quotient.dim != 2:
        raise ValueError(f"needs a 2-generated group with G/Φ(G) of rank 2, got rank {quotient.dim}")
    first, second = (quotient.coords(theta.apply(u)) for u in quotient.basis)
    return (first[0], second[0]), (first[1], second[1])


def is_minus_identity(G: GroupTable, matrix) -> bool:
    p = G.prime
    return matrix == ((p - 1, 0), (0, p - 1))


def family_automorphisms(G: GroupTable) -> list[Automorphism]:
    """Deduplicated automorphisms of the family that G belongs to (residues only for class-2)."""
    if isinstance(G.params, Metacyclic):
        generated = metacyclic_aut_family(G)
    elif isinstance(G.params, Class2Beauville):
        generated = class2_aut_family(G, residues_only=True)
    elif isinstance(G.params, (TriangleQuotient, Abelian)):
        iota = inversion_automorphism(G)
        return [iota] if iota is not None else []
    else:
        raise NotInFamily("no parametrized automorphism family for this group")
    unique = {theta.images: theta for _, theta in generated if theta is not None}
    return [unique[key] for key in sorted(unique)]
