"""
Command line
Runs verification suites and prints a JSON report to stdout, a summary to stderr
"""
import argparse
import json
import logging
import sys
from typing import Any, Optional, Sequence

from pbeauville.config import get_settings, resolve_seed
from pbeauville.errors import WitnessVerificationFailed
from pbeauville.report import EXIT_USAGE
from pbeauville.registry import SuiteRegistry

logger = logging.getLogger("pbeauville.cli")

VERIFY_SUITES = (
    "prop-no-2group-class2",
    "thm-metacyclic",
    "thm-class2-criterion",
    "aut-family",
    "thm-a",
    "thm-b",
    "identities",
)
PARAM_FLAGS = ("p", "e", "i", "j", "k", "n", "r", "alpha", "beta", "gamma", "rho", "sigma")


def _key_value(text: str) -> tuple[str, int]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key} must be an integer, got {value!r}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="Seed; defaults to $BEAUVILLE_SEED, then 0.")
    parser.add_argument("--workers", type=int, default=1, help="Process pool size.")
    parser.add_argument("--timing", action="store_true", help="Record wall time in the report.")
    parser.add_argument("--log-level", type=str, default=None, help="Logging level, e.g. DEBUG.")


def _add_group(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", type=str, default=None, help="Group family, e.g. metacyclic, class2, triangle.")
    parser.add_argument("--params", type=_key_value, nargs="*", default=[], help="Family parameters as key=value.")
    parser.add_argument("--presentation", type=str, default=None, help="Packaged presentation name or .pc file.")
    for name in PARAM_FLAGS:
        parser.add_argument(f"--{name}", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pbeauville", description="Beauville p-group verification harness")
    subparsers = parser.add_subparsers(dest="command", required=True)

    verify = subparsers.add_parser("verify", help="Run a verification suite.")
    verify.add_argument("suite", choices=VERIFY_SUITES)
    verify.add_argument("--max-order", type=int, default=None, help="Largest group order to enumerate.")
    verify.add_argument("--exhaustive", action="store_true", help="Test every family automorphism.")
    verify.add_argument("--samples", type=int, default=None, help="Number of random samples.")
    verify.add_argument("--all", action="store_true", help="Enumerate every Beauville structure.")
    _add_group(verify)
    _add_common(verify)

    find = subparsers.add_parser("find-structure", help="Find a Beauville structure and a strongly real witness.")
    find.add_argument("--strategy", choices=("deterministic_scan", "seeded_random"), default=None)
    find.add_argument("--output", type=str, default=None, help="Write the structure and witness as JSON.")
    _add_group(find)
    _add_common(find)

    replay = subparsers.add_parser("verify-witness", help="Replay a witness file.")
    replay.add_argument("--file", type=str, required=True)
    _add_common(replay)

    subparsers.add_parser("list", help="List the available suites.")
    return parser


def arguments_from(args: argparse.Namespace) -> dict[str, Any]:
    """Suite arguments from parsed flags; only flags that were given are kept."""
    arguments: dict[str, Any] = {}
    params = {}
    for name in PARAM_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            arguments[name] = value
            params[name] = value
    params.update(dict(getattr(args, "params", None) or []))
    for name, value in params.items():
        arguments.setdefault(name, value)
    if getattr(args, "family", None):
        arguments["family"] = args.family
        arguments["params"] = params
    for name in ("presentation", "max_order", "samples", "strategy", "output", "file"):
        value = getattr(args, name, None)
        if value is not None:
            arguments[name] = value
    for flag in ("exhaustive", "all"):
        if getattr(args, flag, False):
            arguments[flag] = True
    arguments["seed"] = resolve_seed(args.seed)
    arguments["workers"] = args.workers
    return arguments


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "list":
        print(json.dumps(SuiteRegistry.list_suites(), indent=2))
        return 0

    logging.basicConfig(
        level=(args.log_level or get_settings().logging.level).upper(),
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    name = args.suite if args.command == "verify" else args.command
    try:
        arguments = arguments_from(args)
        report = SuiteRegistry.run(name, arguments, timing=args.timing)
    except (ValueError, WitnessVerificationFailed) as e:
        logger.error(f"{name}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(report.to_json())
    print(report.summary(), file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
