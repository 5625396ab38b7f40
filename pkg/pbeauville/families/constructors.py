"""
Family constructors
Pc presentations for every family, with their distinguished pairs and relation lists
"""
import logging
from functools import lru_cache
from typing import Optional

from pbeauville.config import Settings
from pbeauville.engine.pcgroup import Element, GroupTable, build_group
from pbeauville.engine.presentation import PcPresentation
from pbeauville.families.params import (
    Abelian,
    Class2Beauville,
    Class2FiveTuple,
    FamilyParams,
    Metacyclic,
    SpecialClass2,
    TriangleQuotient,
)

logger = logging.getLogger("pbeauville.families")


def family_presentation(params: FamilyParams) -> PcPresentation:
    """The pc presentation of a family group; commutators become extra pc generators."""
    p = params.p
    if isinstance(params, Metacyclic):
        q = p ** params.e
        # b before a, so that a^b = a^{1+p^i} is a conjugate relation.
        return PcPresentation(
            prime=p,
            gens=("b", "a"),
            rel_orders=(q, q),
            conj_rels={(0, 1): ((1, 1 + p ** params.i),)},
            distinguished=("a", "b"),
        )
    if isinstance(params, Class2FiveTuple):
        c_order = p ** params.gamma
        power = {}
        if params.rho < params.gamma:
            power[0] = ((2, p ** params.rho),)
        if params.sigma < params.gamma:
            power[1] = ((2, p ** params.sigma),)
        return PcPresentation(
            prime=p,
            gens=("x", "y", "c"),
            rel_orders=(p ** params.alpha, p ** params.beta, c_order),
            power_rels=power,
            conj_rels={(0, 1): ((1, 1), (2, c_order - 1))},
            distinguished=("x", "y"),
            definitions={2: (("comm", 0, 1),)},
        )
    if isinstance(params, Class2Beauville):
        power = {1: ((2, p ** params.k),)} if params.k < params.j else {}
        return PcPresentation(
            prime=p,
            gens=("a", "b", "c"),
            rel_orders=(p ** params.e, p ** params.i, p ** params.j),
            power_rels=power,
            conj_rels={(0, 1): ((1, 1), (2, 1))},
            distinguished=("a", "b"),
            definitions={2: (("comm", 1, 0),)},
        )
    if isinstance(params, SpecialClass2):
        z_order = p ** params.r
        return PcPresentation(
            prime=p,
            gens=("x", "y", "z"),
            rel_orders=(p ** params.n, p ** params.n, z_order),
            conj_rels={(0, 1): ((1, 1), (2, z_order - 1))},
            distinguished=("x", "y"),
            definitions={2: (("comm", 0, 1),)},
        )
    if isinstance(params, TriangleQuotient):
        top, low = 2 ** params.e, 2 ** (params.e - 1)
        return PcPresentation(
            prime=2,
            gens=("x", "y", "z", "t", "w"),
            rel_orders=(top, top, low, low, low),
            conj_rels={
                (0, 1): ((1, 1), (2, 1)),
                (0, 2): ((2, 1), (3, 1)),
                (1, 2): ((2, 1), (4, 1)),
            },
            distinguished=("x", "y"),
            definitions={
                2: (("comm", 1, 0),),
                3: (("comm", 2, 0),),
                4: (("comm", 2, 1),),
            },
        )
    if isinstance(params, Abelian):
        q = p ** params.e
        return PcPresentation(prime=p, gens=("x", "y"), rel_orders=(q, q), distinguished=("x", "y"))
    raise ValueError(f"Unknown family: {params!r}")


def construct(params: FamilyParams, settings: Optional[Settings] = None) -> GroupTable:
    """
    Build the group of a family.

    Args:
        params: Validated family parameters
        settings: Size caps; groups built with the default settings are cached
    """
    if settings is None:
        return _construct_cached(params)
    return _construct(params, settings)


@lru_cache(maxsize=64)
def _construct_cached(params: FamilyParams) -> GroupTable:
    return _construct(params, None)


def _construct(params: FamilyParams, settings: Optional[Settings]) -> GroupTable:
    G = build_group(family_presentation(params), settings=settings, params=params)
    if isinstance(params, Class2Beauville):
        # Second coordinate system: x = a^-1, y = b.
        G.named["x"] = G.invert(G.named["a"])
        G.named["y"] = G.named["b"]
    logger.info(f"✓ Constructed {params.label()} of order {G.order}")
    return G


Relation = tuple[str, Element, Element]


def family_relations(G: GroupTable) -> list[Relation]:
    """
    The source presentation's relations as (label, lhs, rhs) evaluated in G.

    Every pair must be equal for a correctly constructed group.
    """
    params = G.params
    p = G.prime
    pw, comm, one = G.power_of, G.commutator, G.identity
    n = G.named

    if isinstance(params, Metacyclic):
        a, b = n["a"], n["b"]
        return [
            ("a^{p^e} = 1", pw(a, p ** params.e), one),
            ("b^{p^e} = 1", pw(b, p ** params.e), one),
            ("[a,b] = a^{p^i}", comm(a, b), pw(a, p ** params.i)),
        ]
    if isinstance(params, Class2FiveTuple):
        x, y = n["x"], n["y"]
        c = comm(x, y)
        return [
            ("[x,y]^{p^gamma} = 1", pw(c, p ** params.gamma), one),
            ("[x,y,x] = 1", comm(c, x), one),
            ("[x,y,y] = 1", comm(c, y), one),
            ("x^{p^alpha} = [x,y]^{p^rho}", pw(x, p ** params.alpha), pw(c, p ** params.rho)),
            ("y^{p^beta} = [x,y]^{p^sigma}", pw(y, p ** params.beta), pw(c, p ** params.sigma)),
        ]
    if isinstance(params, Class2Beauville):
        a, b = n["a"], n["b"]
        c = comm(b, a)
        relations = [
            ("a^{p^e} = 1", pw(a, p ** params.e), one),
            ("[b,a]^{p^j} = 1", pw(c, p ** params.j), one),
            ("[b,a,a] = 1", comm(c, a), one),
            ("[b,a,b] = 1", comm(c, b), one),
            ("b^{p^i} = [b,a]^{p^k}", pw(b, p ** params.i), pw(c, p ** params.k)),
        ]
        x, y = n["x"], n["y"]
        cxy = comm(x, y)
        relations += [
            ("x^{p^e} = 1", pw(x, p ** params.e), one),
            ("[x,y]^{p^j} = 1", pw(cxy, p ** params.j), one),
            ("y^{p^i} = [x,y]^{p^k}", pw(y, p ** params.i), pw(cxy, p ** params.k)),
        ]
        return relations
    if isinstance(params, SpecialClass2):
        x, y = n["x"], n["y"]
        z = comm(x, y)
        return [
            ("x^{p^n} = 1", pw(x, p ** params.n), one),
            ("y^{p^n} = 1", pw(y, p ** params.n), one),
            ("z^{p^r} = 1", pw(z, p ** params.r), one),
            ("[x,z] = 1", comm(x, z), one),
            ("[y,z] = 1", comm(y, z), one),
            ("[x,y] = z", z, n["z"]),
        ]
    if isinstance(params, TriangleQuotient):
        x, y = n["x"], n["y"]
        top, low = 2 ** params.e, 2 ** (params.e - 1)
        z = comm(y, x)
        t, w = comm(z, x), comm(z, y)
        return [
            ("x^{2^e} = 1", pw(x, top), one),
            ("y^{2^e} = 1", pw(y, top), one),
            ("(xy)^{2^e} = 1", pw(G.multiply(x, y), top), one),
            ("z^{2^{e-1}} = 1", pw(z, low), one),
            ("t^{2^{e-1}} = 1", pw(t, low), one),
            ("w^{2^{e-1}} = 1", pw(w, low), one),
            ("[y,x] = z", z, n["z"]),
            ("[z,x] = t", t, n["t"]),
            ("[z,y] = w", w, n["w"]),
            ("[t,x] = 1", comm(t, x), one),
            ("[t,y] = 1", comm(t, y), one),
            ("[w,x] = 1", comm(w, x), one),
            ("[w,y] = 1", comm(w, y), one),
        ]
    if isinstance(params, Abelian):
        x, y = n["x"], n["y"]
        return [
            ("x^{p^e} = 1", pw(x, p ** params.e), one),
            ("y^{p^e} = 1", pw(y, p ** params.e), one),
            ("[x,y] = 1", comm(x, y), one),
        ]
    raise ValueError("group was not built from a family")


def failed_relations(G: GroupTable) -> list[str]:
    return [label for label, lhs, rhs in family_relations(G) if lhs != rhs]
