"""
Automorphism family suite
The parametrized automorphism families against brute force and random image search
"""
import logging
from typing import Any

from pbeauville.families.params import Class2Beauville, Metacyclic, params_to_json
from pbeauville.report import Check, SuiteResult
from pbeauville.strongreal.automorphisms import (
    brute_force_automorphisms,
    class2_aut,
    class2_aut_images,
    class2_family_parameters,
    extend_to_automorphism,
    metacyclic_aut_family,
)
from pbeauville.suites.common import group_from_arguments, relations_check, rng_for

logger = logging.getLogger("pbeauville.suites")

SOUNDNESS_SAMPLES = 10_000
COMPLETENESS_SAMPLES = 1_000


def _metacyclic_checks(G, workers: int) -> list[Check]:
    group = params_to_json(G.params)
    failed = []
    family = {}
    for parameters, theta in metacyclic_aut_family(G):
        if theta is None:
            failed.append(list(parameters))
        else:
            family[theta.images] = theta
    checks = [Check.of(
        "family_maps_are_automorphisms",
        not failed,
        f"{len(failed)} parameter tuples fail to extend",
        {"group": group, "parameters": failed[:20]},
    )]

    brute = {theta.images for theta in brute_force_automorphisms(G, workers)}
    missing = sorted(brute - set(family))
    extra = sorted(set(family) - brute)
    checks.append(Check.of(
        "family_equals_brute_force",
        not missing and not extra,
        f"|family| = {len(family)}, |Aut(G)| = {len(brute)}",
        {"group": group, "missing": [list(map(list, m)) for m in missing[:20]],
         "extra": [list(map(list, m)) for m in extra[:20]]},
    ))
    logger.info(f"✓ Metacyclic family has {len(family)} distinct automorphisms")
    return checks


def _class2_checks(G, samples: int, arguments: dict[str, Any]) -> list[Check]:
    group = params_to_json(G.params)
    params = G.params
    p, bound = params.p, params.p ** params.i
    rng = rng_for(arguments)
    commutators = [G.power_of(G.unit(2), int(v)) for v in range(G.rel_orders[2])]

    # Soundness: sampled parameter tuples all extend.
    soundness = samples or SOUNDNESS_SAMPLES
    failures = []
    for _ in range(soundness):
        m, n, r = (int(v) for v in rng.integers(1, bound + 1, size=3))
        s = int(rng.integers(1, bound + 1))
        while s % p == 0:
            s = int(rng.integers(1, bound + 1))
        c_a, c_b = (commutators[int(v)] for v in rng.integers(0, len(commutators), size=2))
        if extend_to_automorphism(G, *class2_aut_images(G, m, n, r, s, c_a, c_b)) is None:
            failures.append({"m": m, "n": n, "r": r, "s": s, "c_a": list(c_a), "c_b": list(c_b)})
    checks = [Check.of(
        "family_maps_are_automorphisms",
        not failures,
        f"{soundness} sampled parameter tuples, {len(failures)} fail",
        {"group": group, "parameters": failures[:20]},
    )]

    # Completeness: automorphisms from random generating images lie in the family.
    wanted = samples or COMPLETENESS_SAMPLES
    budget = G.settings.search.random_budget
    found = outside = 0
    outside_images = []
    for _ in range(budget):
        if found == wanted:
            break
        u, v = (G.unrank(int(rank)) for rank in rng.integers(0, G.order, size=2))
        theta = extend_to_automorphism(G, u, v)
        if theta is None:
            continue
        found += 1
        parameters = class2_family_parameters(G, theta)
        if parameters is None or class2_aut(G, *parameters).images != theta.images:
            outside += 1
            outside_images.append(theta.to_json())
    checks.append(Check.of(
        "random_automorphisms_in_family",
        outside == 0,
        f"{found} random automorphisms, {outside} outside the family",
        {"group": group, "automorphisms": outside_images[:20]},
    ))
    if found < wanted:
        checks.append(Check.unknown(
            "completeness_sample_size",
            f"only {found} of {wanted} random automorphisms within {budget} draws",
        ))
    return checks


def aut_family(arguments: dict[str, Any]) -> SuiteResult:
    """
    Compare a parametrized automorphism family with Aut(G).

    Args:
        arguments: family and params (metacyclic or class2_beauville); samples,
            seed and workers for the sampled class-2 checks
    """
    G, _ = group_from_arguments(arguments)
    checks = [relations_check(G)]
    if isinstance(G.params, Metacyclic):
        checks += _metacyclic_checks(G, int(arguments.get("workers", 1)))
    elif isinstance(G.params, Class2Beauville):
        checks += _class2_checks(G, int(arguments.get("samples") or 0), arguments)
    else:
        raise ValueError(f"aut-family needs the metacyclic or class2_beauville family, got {G.params.family}")
    return SuiteResult(group_order=G.order, checks=checks)
