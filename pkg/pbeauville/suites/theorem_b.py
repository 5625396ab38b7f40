"""
Theorem B suite
Every Beauville structure of the triangle quotient of level e is strongly real
"""
import logging
from typing import Any, Optional

from pbeauville.beauville.structures import BeauvilleStructure, disjoint_partners, pair_index, random_beauville_structure
from pbeauville.errors import SearchBudgetExceeded, WitnessVerificationFailed
from pbeauville.families.constructors import construct
from pbeauville.families.params import make_params, params_to_json
from pbeauville.report import Check, SuiteResult
from pbeauville.strongreal.decision import is_strong_real_witness
from pbeauville.strongreal.theorem_b import TriangleWitnessBuilder, theorem_b_witness
from pbeauville.strongreal.witness import witness_set
from pbeauville.suites.common import relations_check, rng_for

logger = logging.getLogger("pbeauville.suites")

DEFAULT_SAMPLES = 1_000
AGREEMENT_SAMPLES = 100


class _Tally:
    """Counts witnesses and keeps the first failures for the report."""

    def __init__(self, group: dict):
        self.group = group
        self.structures = 0
        self.fallback_count = 0
        self.failure_count = 0
        self.fallbacks: list[dict] = []
        self.failures: list[dict] = []

    def record(self, G, structure: BeauvilleStructure, builder: Optional[TriangleWitnessBuilder] = None):
        self.structures += 1
        try:
            witness = builder.witness(structure.pair2) if builder else theorem_b_witness(G, structure)
        except WitnessVerificationFailed as e:
            self.failure_count += 1
            if len(self.failures) < 20:
                self.failures.append(e.counterexample or structure.to_json())
            return
        if not witness.constructive:
            self.fallback_count += 1
            if len(self.fallbacks) < 20:
                self.fallbacks.append({**structure.to_json(), "witness": witness.to_json()})

    def checks(self, scope: str) -> list[Check]:
        return [
            Check.of(
                "all_structures_strongly_real",
                not self.failures,
                f"{self.structures} {scope} structures, {self.failure_count} without a witness",
                {"group": self.group, "structures": self.failures},
            ),
            Check.of(
                "constructive_witnesses",
                not self.fallbacks,
                f"{self.fallback_count} structures needed the exhaustive fallback",
                {"group": self.group, "structures": self.fallbacks},
            ),
        ]


def _all_structures(G, tally: _Tally) -> None:
    index = pair_index(G)
    for i, js in disjoint_partners(index):
        if not js.size:
            continue
        pair1 = index.pair(G, i)
        try:
            builder = TriangleWitnessBuilder(G, pair1)
        except WitnessVerificationFailed as e:
            tally.structures += len(js)
            tally.failure_count += len(js)
            if len(tally.failures) < 20:
                tally.failures.append(e.counterexample or {"pair1": pair1.to_json()})
            continue
        for j in js:
            tally.record(G, BeauvilleStructure(pair1, index.pair(G, int(j))), builder)
        if i % 500 == 0:
            logger.info(f"{tally.structures} structures witnessed so far")


def _random_structures(G, count: int, rng):
    for _ in range(count):
        structure = random_beauville_structure(G, rng)
        if structure is None:
            raise SearchBudgetExceeded("could not draw a random Beauville structure")
        yield structure


def _agreement(G, count: int, rng, group: dict) -> Check:
    disagreements = []
    for structure in _random_structures(G, count, rng):
        witness = theorem_b_witness(G, structure)
        brute = witness_set(G, witness.theta, structure.pair2.x, structure.pair2.y)
        if G.rank(witness.g2) not in brute or not is_strong_real_witness(G, structure, witness):
            disagreements.append({**structure.to_json(), "witness": witness.to_json()})
    return Check.of(
        "constructive_agrees_with_search",
        not disagreements,
        f"{count} seeded structures compared with the exhaustive witness set",
        {"group": group, "structures": disagreements[:20]},
    )


def theorem_b(arguments: dict[str, Any]) -> SuiteResult:
    """
    Build and verify a strongly real witness for every (or every sampled) Beauville structure.

    Args:
        arguments: e; all for exhaustive enumeration, samples otherwise; seed
    """
    params = make_params("triangle_quotient", e=int(arguments["e"]))
    G = construct(params)
    group = params_to_json(params)
    rng = rng_for(arguments)
    checks = [relations_check(G)]

    tally = _Tally(group)
    if arguments.get("all"):
        _all_structures(G, tally)
        checks += tally.checks("enumerated")
    else:
        for structure in _random_structures(G, int(arguments.get("samples") or DEFAULT_SAMPLES), rng):
            tally.record(G, structure)
        checks += tally.checks("sampled")
    logger.info(f"✓ Witnessed {tally.structures} structures of group of order {G.order}")

    checks.append(_agreement(G, AGREEMENT_SAMPLES, rng, group))
    return SuiteResult(group_order=G.order, checks=checks)
