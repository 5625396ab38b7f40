"""
Inversion witnesses
Elements g with θ(x) = (x^-1)^g and θ(y) = (y^-1)^g, and the identities used to construct them
"""
import logging
from typing import Literal, Optional

import numpy as np

from pbeauville.engine.elementset import ElementSet
from pbeauville.engine.pcgroup import Element, GroupTable
from pbeauville.engine.subgroups import centralizer, orbit_with_transversal
from pbeauville.errors import NotAWitness, NotTriangleQuotient, WrongForm
from pbeauville.families.params import TriangleQuotient
from pbeauville.strongreal.automorphisms import Automorphism, inversion_automorphism

logger = logging.getLogger("pbeauville.strongreal")

Basis = Literal["xy_x", "xy_y"]
Side = Literal["x_side", "y_side"]


def is_inversion_witness(G: GroupTable, theta: Automorphism, x: Element, y: Element, g: Element) -> bool:
    """θ(x) = (x^-1)^g and θ(y) = (y^-1)^g."""
    return (G.conjugate(G.invert(x), g) == theta.apply(x)
            and G.conjugate(G.invert(y), g) == theta.apply(y))


def _witness_mask(G: GroupTable, theta: Automorphism, x: Element, y: Element) -> np.ndarray:
    tables = G.tables
    perm = theta.permutation()
    everything = np.arange(G.order)
    rx, ry = G.rank(x), G.rank(y)
    mask = tables.conj(np.full(G.order, tables.inv(rx)), everything) == perm[rx]
    mask &= tables.conj(np.full(G.order, tables.inv(ry)), everything) == perm[ry]
    return mask


def witness_set(G: GroupTable, theta: Automorphism, x: Element, y: Element) -> ElementSet:
    """All inversion witnesses for (x, y) under θ; empty or a coset of C(x) ∩ C(y)."""
    if G.tables is not None:
        return ElementSet(_witness_mask(G, theta, x, y))
    g0 = inversion_witness(G, theta, x, y)
    if g0 is None:
        return ElementSet.empty(G.order)
    common = centralizer(G, x) & centralizer(G, y)
    return ElementSet.from_ranks(G.order, (G.rank(G.multiply(G.unrank(int(c)), g0)) for c in common.ranks()))


def inversion_witness(G: GroupTable, theta: Automorphism, x: Element, y: Element) -> Optional[Element]:
    """
    The smallest-rank witness for (x, y) under θ, or None.

    Small groups are scanned directly. Larger ones solve (x^-1)^g0 = θ(x) through the
    conjugation orbit of x^-1 and then search the coset C(x)·g0.
    """
    if G.order <= G.settings.limits.witness_scan_order and G.tables is not None:
        hits = np.flatnonzero(_witness_mask(G, theta, x, y))
        return G.unrank(int(hits[0])) if hits.size else None

    x_inv = G.invert(x)
    transversal = orbit_with_transversal(G, x_inv, G.conjugate)
    target = theta.apply(x)
    if target not in transversal:
        return None
    g0 = transversal[target]
    y_inv, y_image = G.invert(y), theta.apply(y)
    candidates = []
    for c in centralizer(G, x).ranks():
        g = G.multiply(G.unrank(int(c)), g0)
        if G.conjugate(y_inv, g) == y_image:
            candidates.append(g)
    if not candidates:
        return None
    return min(candidates, key=G.rank)


def basis_change_transfer(G: GroupTable, theta: Automorphism, x: Element, y: Element, basis: Basis, h: Element) -> Element:
    """
    Turn a witness h for (xy, x) or (xy, y) into a witness for (x, y).

    For basis xy_x the witness is x^-1·h, for xy_y it is y·h.

    Raises:
        NotAWitness: h does not witness the given basis
    """
    xy = G.multiply(x, y)
    if basis == "xy_x":
        second, g = x, G.multiply(G.invert(x), h)
    elif basis == "xy_y":
        second, g = y, G.multiply(y, h)
    else:
        raise ValueError(f"Unknown basis: {basis}")
    if not is_inversion_witness(G, theta, xy, second, h):
        raise NotAWitness(f"h does not witness the basis {basis}")
    if not is_inversion_witness(G, theta, x, y, g):
        raise RuntimeError("basis change produced an element that is not a witness")
    return g


def basis_change_forward(G: GroupTable, theta: Automorphism, x: Element, y: Element, basis: Basis, g: Element) -> Element:
    """Inverse direction: a witness g for (x, y) gives x·g for (xy, x) and y^-1·g for (xy, y)."""
    if not is_inversion_witness(G, theta, x, y, g):
        raise NotAWitness("g does not witness (x, y)")
    if basis == "xy_x":
        return G.multiply(x, g)
    if basis == "xy_y":
        return G.multiply(G.invert(y), g)
    raise ValueError(f"Unknown basis: {basis}")


# ---------------------------------------------------------------------------
# Triangle quotients
# ---------------------------------------------------------------------------

def require_triangle(G: GroupTable) -> TriangleQuotient:
    if not isinstance(G.params, TriangleQuotient):
        raise NotTriangleQuotient("needs a quotient of the (2^e, 2^e, 2^e) triangle group built by the triangle family")
    return G.params


def z_form(G: GroupTable, u: Element, side: Side) -> tuple[int, int, int]:
    """
    Exponents (i, j, k) with u = x^i y^j z^k (x_side) or u = y^j x^i z^k (y_side), exactly.

    Raises:
        WrongForm: u has a t or w component left over
    """
    require_triangle(G)
    x, y = G.named["x"], G.named["y"]
    i, j = u[0], u[1]
    head = G.multiply(G.power_of(x, i), G.power_of(y, j)) if side == "x_side" else \
        G.multiply(G.power_of(y, j), G.power_of(x, i))
    rest = G.multiply(G.invert(head), u)
    if rest[0] or rest[1] or rest[3] or rest[4]:
        raise WrongForm(f"{u} is not of the form {'x^i y^j z^k' if side == 'x_side' else 'y^j x^i z^k'}")
    return i, j, rest[2]


def inversion_defect(G: GroupTable, u: Element, side: Side) -> tuple[Element, Element]:
    """
    The pair (u·θ(u), w) for θ the inversion automorphism, where u·θ(u) = [u^-1, w].

    For u = x^i y^j z^k with i odd, w = y^{2kn - j} with i·n ≡ 1 mod 2^e.
    For u = y^j x^i z^k with j odd, w = x^{-2km - i} with j·m ≡ 1 mod 2^e.
    """
    params = require_triangle(G)
    if side not in ("x_side", "y_side"):
        raise ValueError(f"Unknown side: {side}")
    theta = inversion_automorphism(G)
    modulus = 2 ** params.e
    i, j, k = z_form(G, u, side)
    if side == "x_side":
        if i % 2 == 0:
            raise WrongForm("x_side needs an odd exponent of x")
        n = pow(i, -1, modulus)
        argument = G.power_of(G.named["y"], 2 * k * n - j)
    else:
        if j % 2 == 0:
            raise WrongForm("y_side needs an odd exponent of y")
        m = pow(j, -1, modulus)
        argument = G.power_of(G.named["x"], -2 * k * m - i)
    return G.multiply(u, theta.apply(u)), argument
