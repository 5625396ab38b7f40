"""
Identity suite
Commutator, inversion-defect, basis-change, centralizer and exponent identities of the triangle quotients
"""
import logging
from math import comb
from typing import Any

from pbeauville.beauville.sigma import is_generating_pair
from pbeauville.engine.elementset import ElementSet
from pbeauville.engine.subgroups import center, centralizer, derived, exponent_of, subgroup_exponent
from pbeauville.families.constructors import construct
from pbeauville.families.params import make_params, params_to_json
from pbeauville.report import Check, SuiteResult
from pbeauville.strongreal.automorphisms import extend_to_automorphism, inversion_automorphism
from pbeauville.strongreal.theorem_b import CongruenceParams, congruences_hold, solve_rs
from pbeauville.strongreal.witness import (
    basis_change_forward,
    basis_change_transfer,
    inversion_defect,
    inversion_witness,
    is_inversion_witness,
)
from pbeauville.suites.common import relations_check, rng_for

logger = logging.getLogger("pbeauville.suites")

DEFAULT_SAMPLES = 10_000


def commutator_power_check(G, group) -> Check:
    """[y^m, x^n] = z^{mn} t^{m C(n,2)} w^{n C(m,2)} for all exponents below 2^e."""
    x, y, z, t, w = (G.named[name] for name in "xyztw")
    top = 2 ** G.params.e
    bad = []
    for m in range(top):
        for n in range(top):
            lhs = G.commutator(G.power_of(y, m), G.power_of(x, n))
            rhs = G.product([G.power_of(z, m * n), G.power_of(t, m * comb(n, 2)), G.power_of(w, n * comb(m, 2))])
            if lhs != rhs:
                bad.append({"m": m, "n": n})
    return Check.of("commutator_powers", not bad, f"{top * top} exponent pairs", {"group": group, "failures": bad[:20]})


def inversion_images_check(G, group) -> Check:
    """θ(z) = z t^-1 w^-1, θ(t) = t^-1 and θ(w) = w^-1 for the inversion automorphism."""
    theta = inversion_automorphism(G)
    z, t, w = (G.named[name] for name in "ztw")
    holds = theta is not None and (
        theta.apply(z) == G.product([z, G.invert(t), G.invert(w)])
        and theta.apply(t) == G.invert(t)
        and theta.apply(w) == G.invert(w)
    )
    return Check.of("inversion_images", holds, "images of z, t and w", {"group": group})


def defect_check(G, group) -> Check:
    """u θ(u) = [u^-1, argument] for every u = x^i y^j z^k (i odd) and u = y^j x^i z^k (j odd)."""
    x, y, z = (G.named[name] for name in "xyz")
    top, low = 2 ** G.params.e, 2 ** (G.params.e - 1)
    tried = 0
    bad = []
    for odd in range(1, top, 2):
        for other in range(top):
            for k in range(low):
                for side, u in (
                    ("x_side", G.product([G.power_of(x, odd), G.power_of(y, other), G.power_of(z, k)])),
                    ("y_side", G.product([G.power_of(y, odd), G.power_of(x, other), G.power_of(z, k)])),
                ):
                    tried += 1
                    defect, argument = inversion_defect(G, u, side)
                    if defect != G.commutator(G.invert(u), argument):
                        bad.append({"side": side, "u": list(u)})
    return Check.of("inversion_defect", not bad, f"{tried} elements", {"group": group, "failures": bad[:20]})


def basis_change_check(groups, samples: int, rng) -> Check:
    """
    Witnesses for (x, y) and for (xy, x) or (xy, y) determine each other.

    θ is the inversion automorphism conjugated by a random automorphism.
    """
    tried = 0
    bad = []
    per_group = max(1, samples // len(groups))
    for G in groups:
        iota = inversion_automorphism(G)
        for _ in range(per_group):
            psi = None
            while psi is None:
                psi = extend_to_automorphism(G, *(G.unrank(int(r)) for r in rng.integers(0, G.order, size=2)))
            theta = psi.compose(iota.compose(psi.inverse()))
            x, y = (G.unrank(int(r)) for r in rng.integers(0, G.order, size=2))
            if not is_generating_pair(G, x, y):
                continue
            g = inversion_witness(G, theta, x, y)
            if g is None:
                continue
            tried += 1
            xy = G.multiply(x, y)
            for basis, second in (("xy_x", x), ("xy_y", y)):
                h = basis_change_forward(G, theta, x, y, basis, g)
                back = basis_change_transfer(G, theta, x, y, basis, h)
                if not is_inversion_witness(G, theta, xy, second, h) or back != g:
                    bad.append({"group": params_to_json(G.params), "theta": theta.to_json(),
                                "x": list(x), "y": list(y), "basis": basis})
    return Check.of("basis_change", not bad, f"{tried} instances in both directions", {"failures": bad[:20]})


def centralizer_check(G, group) -> Check:
    """C(u) = <u> Z(G) for u with one odd and one even leading exponent."""
    Z = [G.unrank(int(r)) for r in center(G).ranks()]
    tried = 0
    bad = []
    for u in G.elements():
        if (u[0] + u[1]) % 2 == 0:
            continue
        tried += 1
        powers = [G.power_of(u, a) for a in range(G.order_of(u))]
        expected = ElementSet.from_ranks(G.order, (G.rank(G.multiply(p, c)) for p in powers for c in Z))
        if centralizer(G, u) != expected:
            bad.append(list(u))
    return Check.of("centralizer", not bad, f"{tried} elements", {"group": group, "elements": bad[:20]})


def exponent_check(G, group) -> list[Check]:
    e = G.params.e
    exp_g = exponent_of(G)
    exp_derived = subgroup_exponent(G, derived(G))
    return [
        Check.of("exponent", exp_g == 2 ** e, f"exp G = {exp_g}", {"group": group, "exponent": exp_g}),
        Check.of("derived_exponent", exp_derived == 2 ** (e - 1), f"exp G' = {exp_derived}",
                 {"group": group, "exponent": exp_derived}),
    ]


def congruence_check(e: int, samples: int, rng) -> Check:
    """Random parameters: solve_rs satisfies the x and y congruences, and the z congruence follows."""
    top, low = 2 ** e, 2 ** (e - 1)
    bad = []
    for _ in range(samples):
        i1, j1, i2, j2 = (int(v) for v in rng.integers(0, top, size=4))
        k1, k2 = (int(v) for v in rng.integers(0, low, size=2))
        params = CongruenceParams.from_exponents(e, i1, j1, k1, i2, j2, k2)
        R, S = solve_rs(params)
        results = congruences_hold(params, R, S)
        if not all(results.values()):
            bad.append({**params.model_dump(), "R": R, "S": S, "results": results})
    return Check.of("congruences", not bad, f"{samples} random parameter tuples", {"e": e, "failures": bad[:20]})


def identities(arguments: dict[str, Any]) -> SuiteResult:
    """
    Every identity behind the constructive witnesses, on the triangle quotient of level e.

    Args:
        arguments: e; samples for the random basis-change and congruence checks; seed
    """
    e = int(arguments["e"])
    params = make_params("triangle_quotient", e=e)
    G = construct(params)
    group = params_to_json(params)
    rng = rng_for(arguments)
    samples = int(arguments.get("samples") or DEFAULT_SAMPLES)

    checks = [relations_check(G), inversion_images_check(G, group), commutator_power_check(G, group)]
    checks += exponent_check(G, group)
    checks.append(defect_check(G, group))
    checks.append(centralizer_check(G, group))
    others = [construct(make_params("abelian", p=5, e=1)), construct(make_params("abelian", p=2, e=e))]
    checks.append(basis_change_check([G] + others, samples, rng))
    checks.append(congruence_check(e, samples, rng))
    logger.info(f"✓ Identity suite finished for e = {e}")
    return SuiteResult(group_order=G.order, checks=checks)
