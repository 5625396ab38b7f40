"""
Theorem A suite
Metacyclic and mixed class-2 Beauville groups are purely non-strongly real
"""
import logging
from typing import Any

from pbeauville.beauville.sigma import is_generating_pair
from pbeauville.beauville.structures import is_beauville_group
from pbeauville.errors import InvalidParams
from pbeauville.families.params import Class2Beauville, Metacyclic, params_to_json
from pbeauville.report import Check, SuiteResult
from pbeauville.strongreal.automorphisms import family_automorphisms, induced_matrix_mod_frattini, is_minus_identity
from pbeauville.strongreal.decision import classify_structures, witnessed_generating_pair
from pbeauville.strongreal.witness import inversion_witness
from pbeauville.suites.common import group_from_arguments, relations_check, rng_for

logger = logging.getLogger("pbeauville.suites")

DEFAULT_SAMPLES = 1_000
PAIR_SAMPLES = 100


def _implication_tabled(G, auts, group) -> Check:
    # For tabled groups every generating pair is covered at once per θ.
    for theta in auts:
        found = witnessed_generating_pair(G, theta)
        if found is None:
            continue
        if not is_minus_identity(G, induced_matrix_mod_frattini(G, theta)):
            x, y, g = found
            return Check.counterexample(
                "witness_implies_minus_identity",
                "an inversion witness exists for θ not inducing -1",
                {"group": group, "theta": theta.to_json(), "x": list(x), "y": list(y), "g": list(g)},
            )
    return Check.verified(
        "witness_implies_minus_identity",
        f"{len(auts)} automorphisms, all generating pairs",
    )


def _implication_sampled(G, auts, group, samples: int, rng) -> Check:
    tried = 0
    for _ in range(G.settings.search.random_budget):
        if tried == samples:
            break
        x, y = (G.unrank(int(r)) for r in rng.integers(0, G.order, size=2))
        if not is_generating_pair(G, x, y):
            continue
        theta = auts[int(rng.integers(0, len(auts)))]
        tried += 1
        g = inversion_witness(G, theta, x, y)
        if g is not None and not is_minus_identity(G, induced_matrix_mod_frattini(G, theta)):
            return Check.counterexample(
                "witness_implies_minus_identity",
                "an inversion witness exists for θ not inducing -1",
                {"group": group, "theta": theta.to_json(), "x": list(x), "y": list(y), "g": list(g)},
            )
    if tried < samples:
        return Check.unknown("witness_implies_minus_identity", f"only {tried} of {samples} generating pairs drawn")
    return Check.verified("witness_implies_minus_identity", f"{tried} sampled generating pairs with sampled θ")


def theorem_a(arguments: dict[str, Any]) -> SuiteResult:
    """
    No family automorphism inverts a generating pair up to conjugation.

    Args:
        arguments: family and params (metacyclic, or class2_beauville with 0 < k < j);
            exhaustive to test every family automorphism, samples otherwise; seed
    """
    G, group = group_from_arguments(arguments)
    if not isinstance(G.params, (Metacyclic, Class2Beauville)):
        raise InvalidParams("thm-a covers the metacyclic and class2_beauville families")
    seed = int(arguments.get("seed", 0))
    if not is_beauville_group(G, seed=seed):
        raise InvalidParams(f"{G.params.label()} is not a Beauville group")
    checks = [relations_check(G)]

    auts = family_automorphisms(G)
    inverting = [theta for theta in auts if is_minus_identity(G, induced_matrix_mod_frattini(G, theta))]
    checks.append(Check.of(
        "no_family_automorphism_induces_minus_identity",
        not inverting,
        f"{len(auts)} family automorphisms, {len(inverting)} induce -1 on G/Φ(G)",
        {"group": group, "automorphisms": [theta.to_json() for theta in inverting[:20]]},
    ))

    rng = rng_for(arguments)
    exhaustive = bool(arguments.get("exhaustive"))
    samples = int(arguments.get("samples") or DEFAULT_SAMPLES)
    if G.tables is not None:
        if exhaustive or samples >= len(auts):
            tested = auts
        else:
            tested = [auts[int(k)] for k in sorted(rng.choice(len(auts), size=samples, replace=False))]
        checks.append(_implication_tabled(G, tested, group))
    else:
        checks.append(_implication_sampled(G, auts, group, int(arguments.get("samples") or PAIR_SAMPLES), rng))

    limits = G.settings.limits
    if G.tables is not None and G.order <= limits.exhaustive_order:
        classification = classify_structures(G, auts)
    else:
        classification = classify_structures(G, auts, samples=int(arguments.get("samples") or PAIR_SAMPLES), seed=seed)
    checks.append(Check.of(
        "purely_non_strongly_real",
        classification.verdict == "purely_non_strongly_real",
        f"{classification.structures} {'sampled ' if classification.sampled else ''}structures, "
        f"{classification.strongly_real} strongly real",
        {"group": params_to_json(G.params), "classification": classification.to_json()},
    ))
    return SuiteResult(group_order=G.order, checks=checks)
