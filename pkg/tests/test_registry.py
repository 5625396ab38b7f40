"""
Tests for the suite registry
Listing, dispatch, error mapping and witness files
"""
import json

import pytest

import pbeauville.registry as registry
from pbeauville.errors import InvalidParams, SearchBudgetExceeded, WitnessVerificationFailed
from pbeauville.registry import SuiteRegistry
from pbeauville.report import EXIT_BUDGET, EXIT_COUNTEREXAMPLE, EXIT_VERIFIED, Check, Report


def test_list_suites():
    """Test listing all available suites."""
    suites = SuiteRegistry.list_suites()

    names = [suite["name"] for suite in suites]
    assert names == [
        "prop-no-2group-class2", "thm-metacyclic", "thm-class2-criterion", "aut-family",
        "thm-a", "thm-b", "identities", "find-structure", "verify-witness",
    ]
    for suite in suites:
        assert suite["description"]
        assert suite["inputSchema"]["type"] == "object"
        assert set(suite["inputSchema"]["required"]) <= set(suite["inputSchema"]["properties"])


def test_unknown_suite():
    """Test that an unknown suite name is rejected."""
    with pytest.raises(ValueError, match="Unknown suite"):
        SuiteRegistry.run("thm-c", {})


def test_missing_required_argument():
    """Test that missing required arguments are reported by name."""
    with pytest.raises(InvalidParams, match="thm-metacyclic needs e, i"):
        SuiteRegistry.run("thm-metacyclic", {"p": 5})


def test_invalid_family_params():
    """Test that invalid family parameters surface as ValueError."""
    with pytest.raises(ValueError):
        SuiteRegistry.run("thm-metacyclic", {"p": 5, "e": 2, "i": 2})


def test_budget_becomes_unknown(monkeypatch):
    """Test that an exhausted search budget maps to exit code 3."""
    def exhausted(arguments):
        raise SearchBudgetExceeded("no structure within 10 draws")

    monkeypatch.setattr(registry, "find_structure", exhausted)
    report = SuiteRegistry.run("find-structure", {"presentation": "c5xc5"})

    assert report.exit_code == EXIT_BUDGET
    assert report.checks[0].name == "budget"
    assert report.checks[0].status == "unknown"
    assert "10 draws" in report.checks[0].detail


def test_report_metadata():
    """Test seed, workers, params and timing in the report."""
    plain = SuiteRegistry.run("thm-metacyclic", {"p": 3, "e": 2, "i": 1, "seed": 9, "workers": 2})
    timed = SuiteRegistry.run("thm-metacyclic", {"p": 3, "e": 2, "i": 1}, timing=True)

    assert plain.seed == 9
    assert plain.workers == 2
    assert plain.params == {"p": 3, "e": 2, "i": 1}
    assert plain.elapsed_ms is None
    assert timed.seed == 0
    assert timed.elapsed_ms is not None and timed.elapsed_ms >= 0


def test_report_json():
    """Test the JSON shape of a report."""
    report = SuiteRegistry.run("thm-metacyclic", {"p": 3, "e": 2, "i": 1})
    document = json.loads(report.to_json())

    assert document["schema"] == 1
    assert document["command"] == "thm-metacyclic"
    assert document["group_order"] == 81
    assert document["elapsed_ms"] is None
    assert {check["status"] for check in document["checks"]} == {"verified"}


def test_exit_codes():
    """Test that counterexamples outrank unknowns, which outrank verified checks."""
    def report(*checks):
        return Report(command="t", params={}, group_order=1, checks=list(checks), seed=0, workers=1)

    verified = Check.verified("a")
    unknown = Check.unknown("b", "budget")
    bad = Check.counterexample("c", "fails", {"x": [1]})

    assert report(verified).exit_code == EXIT_VERIFIED
    assert report(verified, unknown).exit_code == EXIT_BUDGET
    assert report(unknown, bad).exit_code == EXIT_COUNTEREXAMPLE
    assert "✗ c: fails" in report(verified, bad).summary()


def test_counterexample_needs_data():
    """Test that a counterexample without replay data is refused."""
    with pytest.raises(ValueError):
        Check(name="c", status="counterexample")
    with pytest.raises(ValueError):
        Check.counterexample("c", "fails", {})
    with pytest.raises(ValueError, match="replay data"):
        Check.of("c", False)
    with pytest.raises(ValueError, match="replay data"):
        Check.of("c", False, "fails", {})
    assert Check.of("c", True).status == "verified"
    assert Check.of("c", False, "fails", {"x": [1]}).counterexample_data == {"x": [1]}


def test_witness_failure_with_counterexample(monkeypatch):
    """Test that a failed witness construction carrying data becomes a counterexample check."""
    def failed(arguments):
        raise WitnessVerificationFailed("no witness for θ", {"group": {"e": 2}, "theta": [[1, 0]]})

    monkeypatch.setattr(registry, "theorem_b", failed)
    report = SuiteRegistry.run("thm-b", {"e": 2})

    assert report.exit_code == EXIT_COUNTEREXAMPLE
    assert report.checks[0].name == "witness_verification"
    assert report.checks[0].counterexample_data == {"group": {"e": 2}, "theta": [[1, 0]]}


def test_witness_failure_without_counterexample(monkeypatch):
    """Test that a failed witness construction with nothing to replay is raised, not reported."""
    def failed(arguments):
        raise WitnessVerificationFailed("no witness")

    monkeypatch.setattr(registry, "theorem_b", failed)

    with pytest.raises(WitnessVerificationFailed):
        SuiteRegistry.run("thm-b", {"e": 2})



def test_find_structure_writes_witness(tmp_path):
    """Test find-structure on C5 x C5 and replaying its witness file."""
    path = tmp_path / "witness.json"
    found = SuiteRegistry.run("find-structure", {"presentation": "c5xc5", "output": str(path)})

    assert found.exit_code == EXIT_VERIFIED
    assert [check.name for check in found.checks] == ["beauville_structure", "strongly_real"]
    assert "output" not in found.params

    document = json.loads(path.read_text())
    assert document["schema"] == 1
    assert document["group"] == {"presentation": "c5xc5"}
    assert set(document["structure"]) == {"pair1", "pair2"}
    assert document["witness"] is not None

    replayed = SuiteRegistry.run("verify-witness", {"file": str(path)})
    assert replayed.exit_code == EXIT_VERIFIED
    assert replayed.group_order == 25


def test_tampered_witness_is_counterexample(tmp_path):
    """Test that replacing θ by the identity makes the replay fail."""
    path = tmp_path / "witness.json"
    SuiteRegistry.run("find-structure", {"presentation": "c5xc5", "output": str(path)})
    document = json.loads(path.read_text())
    document["witness"]["theta"] = [[1, 0], [0, 1]]
    path.write_text(json.dumps(document))

    report = SuiteRegistry.run("verify-witness", {"file": str(path)})

    assert report.exit_code == EXIT_COUNTEREXAMPLE
    failed = [check for check in report.checks if check.status == "counterexample"]
    assert [check.name for check in failed] == ["strongly_real"]
    assert failed[0].counterexample_data["witness"]["theta"] == [[1, 0], [0, 1]]


def test_malformed_witness_file(tmp_path):
    """Test that malformed and missing witness files are usage errors."""
    path = tmp_path / "witness.json"
    path.write_text("{\"schema\": 1, \"group\": ")

    with pytest.raises(ValueError):
        SuiteRegistry.run("verify-witness", {"file": str(path)})
    with pytest.raises(InvalidParams, match="cannot read"):
        SuiteRegistry.run("verify-witness", {"file": str(tmp_path / "missing.json")})


def test_witness_file_with_bad_elements(tmp_path):
    """Test that structure entries outside the group are rejected."""
    path = tmp_path / "witness.json"
    path.write_text(json.dumps({
        "schema": 1,
        "group": {"presentation": "c5xc5"},
        "structure": {"pair1": {"x": [7, 0], "y": [0, 1]}, "pair2": {"x": [1, 1], "y": [1, 2]}},
    }))

    with pytest.raises(InvalidParams, match="exponent vectors"):
        SuiteRegistry.run("verify-witness", {"file": str(path)})


def test_witness_file_with_non_integer_exponents(tmp_path):
    """Test that non-integer exponents in a witness file are rejected as invalid parameters."""
    path = tmp_path / "witness.json"
    path.write_text(json.dumps({
        "schema": 1,
        "group": {"presentation": "c5xc5"},
        "structure": {"pair1": {"x": ["a", 0], "y": [0, 1]}, "pair2": {"x": [1, 1], "y": [1, 2]}},
    }))

    with pytest.raises(InvalidParams, match="malformed witness file"):
        SuiteRegistry.run("verify-witness", {"file": str(path)})


def test_witness_file_with_null_exponents(tmp_path):
    """Test that null exponents in a witness file are rejected as invalid parameters."""
    path = tmp_path / "witness.json"
    path.write_text(json.dumps({
        "schema": 1,
        "group": {"presentation": "c5xc5"},
        "structure": {"pair1": {"x": [1, 0], "y": [0, 1]}, "pair2": {"x": [1, None], "y": [1, 2]}},
    }))

    with pytest.raises(InvalidParams, match="malformed witness file"):
        SuiteRegistry.run("verify-witness", {"file": str(path)})
