"""
Suite helpers
Group construction from suite arguments and shared check builders
"""
from pathlib import Path
from typing import Any

import numpy as np

from pbeauville.engine.pcgroup import GroupTable, build_group
from pbeauville.engine.presentation import load_presentation, packaged_presentation
from pbeauville.families.constructors import construct, failed_relations
from pbeauville.families.params import FamilyParams, params_to_json, parse_params
from pbeauville.report import Check


def family_params(arguments: dict[str, Any]) -> FamilyParams:
    """FamilyParams from {"family": ..., "params": {...}}; raises InvalidParams."""
    return parse_params({"family": arguments.get("family", ""), **arguments.get("params", {})})


def group_from_arguments(arguments: dict[str, Any]) -> tuple[GroupTable, dict[str, Any]]:
    """
    Build the group a suite works on, and its JSON description for reports and witness files.

    Args:
        arguments: Either "family" with "params", or "presentation" naming a
            packaged presentation or a file path
    """
    if arguments.get("presentation"):
        source = str(arguments["presentation"])
        pres = load_presentation(source) if Path(source).exists() else packaged_presentation(source)
        return build_group(pres), {"presentation": source}
    params = family_params(arguments)
    return construct(params), params_to_json(params)


def group_from_json(group: dict[str, Any]) -> GroupTable:
    """Inverse of the group description returned by group_from_arguments."""
    if "presentation" in group:
        return group_from_arguments({"presentation": group["presentation"]})[0]
    return construct(parse_params(group))


def relations_check(G: GroupTable) -> Check:
    if G.params is None:
        return Check.verified("family_relations", "presentation file, consistency checked on build")
    failures = failed_relations(G)
    return Check.of(
        "family_relations",
        not failures,
        f"{len(failures)} source relations fail" if failures else "all source relations hold",
        {"group": params_to_json(G.params), "relations": failures},
    )


def rng_for(arguments: dict[str, Any]) -> np.random.Generator:
    return np.random.default_rng(arguments.get("seed", 0))
