"""
Central Registry for verification suites
Every entry point lists and runs suites through here
"""
import logging
import time
from typing import Any, Optional

from pbeauville.errors import InvalidParams, SearchBudgetExceeded, TooLarge, WitnessVerificationFailed
from pbeauville.report import Check, Report, SuiteResult
from pbeauville.suites.automorphism_family import aut_family
from pbeauville.suites.classification import class2_criterion, metacyclic_theorem, no_beauville_2group_class2
from pbeauville.suites.identities import identities
from pbeauville.suites.structures import find_structure, verify_witness
from pbeauville.suites.theorem_a import theorem_a
from pbeauville.suites.theorem_b import theorem_b

logger = logging.getLogger("pbeauville.registry")

_FAMILY_SCHEMA = {
    "family": {"type": "string", "description": "Family name, e.g. 'metacyclic', 'class2_beauville', 'triangle'"},
    "params": {"type": "object", "description": "Family parameters, e.g. {'p': 5, 'e': 2, 'i': 1}"},
}
_SAMPLING_SCHEMA = {
    "samples": {"type": "integer", "description": "Number of random samples"},
    "seed": {"type": "integer", "description": "Seed for every random choice"},
}


def _suite(name: str, description: str, properties: dict[str, Any], required: list[str]) -> dict[str, Any]:
    return {
        "name": name,
        "description": description,
        "inputSchema": {"type": "object", "properties": properties, "required": required},
    }


_SUITES = [
    _suite(
        "prop-no-2group-class2",
        "No two-generator 2-group of nilpotency class 2 up to the given order is Beauville.",
        {"max_order": {"type": "integer", "description": "Largest group order, a power of 2"}},
        ["max_order"],
    ),
    _suite(
        "thm-metacyclic",
        "The split metacyclic group (p, e, i) is Beauville exactly when p >= 5.",
        {
            "p": {"type": "integer", "description": "Prime"},
            "e": {"type": "integer", "description": "Exponent, |G| = p^(2e)"},
            "i": {"type": "integer", "description": "1 <= i <= e - 1"},
            "seed": _SAMPLING_SCHEMA["seed"],
        },
        ["p", "e", "i"],
    ),
    _suite(
        "thm-class2-criterion",
        "Class-2 five-tuple groups are Beauville exactly when p >= 5 and |G^(p^(e-1))| >= p^2.",
        {
            "p": {"type": "integer", "description": "Prime"},
            "max_order": {"type": "integer", "description": "Largest group order, a power of p"},
        },
        ["p", "max_order"],
    ),
    _suite(
        "aut-family",
        "The parametrized automorphism family against brute-force Aut(G) or random image search.",
        {**_FAMILY_SCHEMA, **_SAMPLING_SCHEMA},
        ["family", "params"],
    ),
    _suite(
        "thm-a",
        "Metacyclic and mixed class-2 Beauville groups are purely non-strongly real.",
        {**_FAMILY_SCHEMA, **_SAMPLING_SCHEMA,
         "exhaustive": {"type": "boolean", "description": "Test every family automorphism"}},
        ["family", "params"],
    ),
    _suite(
        "thm-b",
        "Every Beauville structure of the triangle quotient of level e is strongly real.",
        {"e": {"type": "integer", "description": "Level, |G| = 2^(5e-3)"},
         "all": {"type": "boolean", "description": "Enumerate every structure"},
         **_SAMPLING_SCHEMA},
        ["e"],
    ),
    _suite(
        "identities",
        "Commutator, inversion-defect, basis-change, centralizer and exponent identities of the triangle quotient.",
        {"e": {"type": "integer", "description": "Level of the triangle quotient"}, **_SAMPLING_SCHEMA},
        ["e"],
    ),
    _suite(
        "find-structure",
        "Find a Beauville structure and a strongly real witness for it.",
        {**_FAMILY_SCHEMA,
         "presentation": {"type": "string", "description": "Packaged presentation name or .pc file path"},
         "strategy": {"type": "string", "description": "'deterministic_scan' or 'seeded_random'"},
         "output": {"type": "string", "description": "Write the structure and witness to this JSON file"},
         "seed": _SAMPLING_SCHEMA["seed"]},
        [],
    ),
    _suite(
        "verify-witness",
        "Replay a witness file written by find-structure.",
        {"file": {"type": "string", "description": "Path of the JSON witness file"}},
        ["file"],
    ),
]


def _check_required(name: str, arguments: dict[str, Any]) -> None:
    for suite in _SUITES:
        if suite["name"] == name:
            missing = [k for k in suite["inputSchema"]["required"] if arguments.get(k) is None]
            if missing:
                raise InvalidParams(f"{name} needs {', '.join(missing)}")


# Arguments that never change outcomes and stay out of the report's params.
_OPERATIONAL = ("seed", "workers", "timing", "output")


class SuiteRegistry:
    """
    Central registry for all verification suites.
    The command line and the tests both go through it.
    """

    @staticmethod
    def list_suites() -> list[dict[str, Any]]:
        """List all available suites."""
        return _SUITES

    @staticmethod
    def call_suite(name: str, arguments: dict[str, Any]) -> SuiteResult:
        """Execute a specific suite by name with arguments."""
        _check_required(name, arguments)
        if name == "prop-no-2group-class2":
            return no_beauville_2group_class2(arguments)
        elif name == "thm-metacyclic":
            return metacyclic_theorem(arguments)
        elif name == "thm-class2-criterion":
            return class2_criterion(arguments)
        elif name == "aut-family":
            return aut_family(arguments)
        elif name == "thm-a":
            return theorem_a(arguments)
        elif name == "thm-b":
            return theorem_b(arguments)
        elif name == "identities":
            return identities(arguments)
        elif name == "find-structure":
            return find_structure(arguments)
        elif name == "verify-witness":
            return verify_witness(arguments)
        else:
            raise ValueError(f"Unknown suite: {name}")

    @staticmethod
    def run(name: str, arguments: Optional[dict[str, Any]] = None, timing: bool = False) -> Report:
        """
        Run a suite and wrap its checks in a report.

        Budget and size errors become an "unknown" check, a failed witness
        construction becomes a counterexample. ValueErrors propagate, and so does
        a failed witness construction with nothing to replay.
        """
        arguments = dict(arguments or {})
        seed = int(arguments.get("seed", 0))
        workers = int(arguments.get("workers", 1))
        logger.info(f"Running {name} with seed {seed}")
        start = time.perf_counter()
        try:
            result = SuiteRegistry.call_suite(name, arguments)
        except (SearchBudgetExceeded, TooLarge) as e:
            logger.warning(f"{name} ran out of budget: {e}")
            result = SuiteResult(group_order=0, checks=[Check.unknown("budget", str(e))])
        except WitnessVerificationFailed as e:
            if not e.counterexample:
                logger.error(f"{name}: {e} carries no counterexample")
                raise
            result = SuiteResult(group_order=0, checks=[
                Check.counterexample("witness_verification", str(e), e.counterexample),
            ])
        elapsed = int((time.perf_counter() - start) * 1000)

        report = Report(
            command=name,
            params={k: v for k, v in arguments.items() if k not in _OPERATIONAL},
            group_order=result.group_order,
            checks=result.checks,
            elapsed_ms=elapsed if timing else None,
            seed=seed,
            workers=workers,
        )
        logger.info(f"✓ {name} finished with exit code {report.exit_code}")
        return report
