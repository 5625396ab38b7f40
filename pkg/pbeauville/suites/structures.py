"""
Structure suites
Find a Beauville structure with its strongly real witness, and replay witness files
"""
import json
import logging
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from pbeauville.beauville.structures import BeauvilleStructure, find_beauville_structure, is_beauville_structure
from pbeauville.errors import InvalidParams, NotInFamily
from pbeauville.families.params import Class2Beauville, Metacyclic, TriangleQuotient
from pbeauville.report import Check, SuiteResult
from pbeauville.strongreal.automorphisms import brute_force_automorphisms, family_automorphisms
from pbeauville.strongreal.decision import StrongRealWitness, find_strong_real_witness, is_strong_real_witness
from pbeauville.strongreal.theorem_b import theorem_b_witness
from pbeauville.suites.common import group_from_arguments, group_from_json

logger = logging.getLogger("pbeauville.suites")


class WitnessFile(BaseModel):
    """What find-structure writes and verify-witness replays."""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=1, alias="schema")
    group: dict[str, Any]
    structure: dict[str, Any]
    witness: Optional[dict[str, Any]] = None

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


def _search_witness(G, structure: BeauvilleStructure) -> tuple[Optional[StrongRealWitness], bool]:
    """A witness if there is one, and whether the automorphisms searched are known to suffice."""
    if isinstance(G.params, TriangleQuotient):
        return theorem_b_witness(G, structure), True
    if G.order <= G.settings.limits.automorphism_scan_order and G.distinguished is not None:
        return find_strong_real_witness(G, structure, brute_force_automorphisms(G)), True
    try:
        auts = family_automorphisms(G)
    except NotInFamily:
        return None, False
    witness = find_strong_real_witness(G, structure, auts)
    return witness, witness is not None or isinstance(G.params, (Metacyclic, Class2Beauville))


def find_structure(arguments: dict[str, Any]) -> SuiteResult:
    """
    Search for a Beauville structure and, if one exists, a strongly real witness for it.

    Args:
        arguments: family and params, or presentation; strategy, seed and the
            optional output path for the witness file
    """
    G, group = group_from_arguments(arguments)
    strategy = arguments.get("strategy") or ("deterministic_scan" if G.tables is not None else "seeded_random")
    structure = find_beauville_structure(G, strategy, seed=int(arguments.get("seed", 0)))
    if structure is None:
        return SuiteResult(group_order=G.order, checks=[
            Check.verified("beauville_structure", "exhaustive scan: the group is not Beauville"),
        ])

    checks = [Check.verified("beauville_structure", json.dumps(structure.to_json()))]
    witness, complete = _search_witness(G, structure)
    if witness is not None:
        checks.append(Check.verified("strongly_real", json.dumps(witness.to_json())))
    elif complete:
        checks.append(Check.verified("strongly_real", "no witness: the structure is not strongly real"))
    else:
        checks.append(Check.unknown("strongly_real", "Aut(G) is beyond the scan cap and no family applies"))

    output = arguments.get("output")
    if output:
        document = WitnessFile(group=group, structure=structure.to_json(),
                               witness=witness.to_json() if witness else None)
        Path(output).write_text(document.to_json() + "\n")
        logger.info(f"✓ Wrote structure to {output}")
    return SuiteResult(group_order=G.order, checks=checks)


def _load_witness_file(path: str) -> WitnessFile:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InvalidParams(f"cannot read witness file {path}: {e}")
    return WitnessFile.model_validate_json(text)


def verify_witness(arguments: dict[str, Any]) -> SuiteResult:
    """
    Replay a witness file against the definitions.

    Args:
        arguments: file, the path of a JSON witness file
    """
    document = _load_witness_file(str(arguments["file"]))
    G = group_from_json(document.group)
    try:
        structure = BeauvilleStructure.from_json(document.structure)
        witness = StrongRealWitness.from_json(G, document.witness) if document.witness is not None else None
        for pair in (structure.pair1, structure.pair2):
            if not (G.is_element(pair.x) and G.is_element(pair.y)):
                raise ValueError("structure elements must be exponent vectors of group elements")
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidParams(f"malformed witness file: {e}")
    data = json.loads(document.to_json())

    checks = [Check.of(
        "beauville_structure",
        is_beauville_structure(G, structure.pair1, structure.pair2),
        "both pairs generate and their Σ-sets meet only in the identity",
        data,
    )]
    if witness is not None:
        checks.append(Check.of(
            "strongly_real",
            is_strong_real_witness(G, structure, witness),
            "θ is an automorphism inverting both pairs up to conjugation",
            data,
        ))
    return SuiteResult(group_order=G.order, checks=checks)
