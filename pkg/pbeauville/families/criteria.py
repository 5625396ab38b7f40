"""
Family criteria
Classification predicates for metacyclic and class-2 Beauville p-groups
"""
import logging
from dataclasses import dataclass
from typing import Literal

from pbeauville.engine.elementset import ElementSet
from pbeauville.engine.frattini import frattini
from pbeauville.engine.pcgroup import Element, GroupTable
from pbeauville.engine.presentation import prime_power_exponent
from pbeauville.engine.subgroups import agemo, exponent_of, nilpotency_class, subgroup_generated
from pbeauville.errors import EvenPrime, InvalidParams, NotClass2, NotInFamily
from pbeauville.families.params import Class2Beauville, Class2FiveTuple, make_params

logger = logging.getLogger("pbeauville.families")


def metacyclic_beauville_predicate(p: int, e: int, i: int) -> bool:
    """A non-abelian split metacyclic p-group with these parameters is Beauville iff p >= 5."""
    make_params("metacyclic", p=p, e=e, i=i)
    return p >= 5


def exponent_power(G: GroupTable) -> int:
    """e with exp G = p^e."""
    return prime_power_exponent(exponent_of(G), G.prime)


def class2_beauville_criterion(G: GroupTable) -> bool:
    """
    For class-2 groups with odd p: Beauville iff p >= 5 and |G^{p^{e-1}}| >= p^2, where p^e = exp G.

    Raises:
        NotClass2: nilpotency class is not 2
        EvenPrime: p = 2, where the criterion does not apply
    """
    if nilpotency_class(G) != 2:
        raise NotClass2(f"group of order {G.order} has nilpotency class {nilpotency_class(G)}")
    if G.prime == 2:
        raise EvenPrime("class-2 criterion needs an odd prime; use exhaustive search for 2-groups")
    if G.prime < 5:
        return False
    e = exponent_power(G)
    return len(agemo(G, e - 1)) >= G.prime ** 2


def enumerate_class2_tuples(p: int, max_order: int) -> list[Class2FiveTuple]:
    """All five-tuples with p^{alpha+beta+gamma} <= max_order, in lexicographic order."""
    limit = prime_power_exponent(max_order, p)
    if limit is None:
        raise InvalidParams(f"max_order must be a power of {p}, got {max_order}")
    tuples = []
    for alpha in range(1, limit + 1):
        for beta in range(1, alpha + 1):
            for gamma in range(1, beta + 1):
                if alpha + beta + gamma > limit:
                    continue
                for rho in range(gamma + 1):
                    for sigma in range(gamma + 1):
                        tuples.append(Class2FiveTuple(p=p, alpha=alpha, beta=beta, gamma=gamma, rho=rho, sigma=sigma))
    return sorted(tuples, key=lambda t: (t.alpha, t.beta, t.gamma, t.rho, t.sigma))


Class2Type = Literal["powerful", "special", "mixed"]


def class2_type(params: Class2Beauville) -> Class2Type:
    """k = 0 gives a powerful group, k = j the special shape, 0 < k < j the mixed shape."""
    if params.k == 0:
        return "powerful"
    if params.k == params.j:
        return "special"
    return "mixed"


def five_tuple_to_class2_beauville(params: Class2FiveTuple) -> Class2Beauville:
    """
    Parameters (e, i, j, k) of a Beauville-shaped five-tuple, where rho = gamma
    and o(x) = o(y) = p^e; the isomorphism sends a to x^-1 and b to y.
    """
    if params.rho != params.gamma:
        raise NotInFamily("five-tuple needs rho = gamma to have <x> and <y> meeting trivially")
    try:
        return make_params("class2_beauville", p=params.p, e=params.alpha, i=params.beta, j=params.gamma, k=params.sigma)
    except InvalidParams as e:
        raise NotInFamily(f"five-tuple {params.label()} is not of class-2 Beauville shape: {e}")


@dataclass(frozen=True)
class FrattiniObstruction:
    """An element a outside Φ(G) of maximal order, its maximal subgroup M = <a, Φ(G)> and a^{2^{e-1}}."""
    a: Element
    maximal: ElementSet
    power: Element
    uniform: bool   # every element of M outside Φ(G) has order 2^e and the same 2^{e-1}-st power


def locate_frattini_obstruction(G: GroupTable) -> FrattiniObstruction:
    """Find the element that lies in every Σ-set of a class-2 2-group."""
    if G.prime != 2:
        raise InvalidParams("the Frattini obstruction is for 2-groups")
    if nilpotency_class(G) != 2:
        raise NotClass2(f"group of order {G.order} has nilpotency class {nilpotency_class(G)}")
    exponent = exponent_of(G)
    phi = frattini(G)
    a = next((u for u in G.elements() if G.rank(u) not in phi and G.order_of(u) == exponent), None)
    if a is None:
        raise NotClass2("no element of maximal order outside the Frattini subgroup")
    phi_gens = [G.unrank(int(r)) for r in phi.ranks()]
    maximal = subgroup_generated(G, [a] + phi_gens)
    power = G.power_of(a, exponent // 2)
    uniform = True
    for r in (maximal - phi).ranks():
        u = G.unrank(int(r))
        if G.order_of(u) != exponent or G.power_of(u, exponent // 2) != power:
            uniform = False
            break
    return FrattiniObstruction(a=a, maximal=maximal, power=power, uniform=uniform)
