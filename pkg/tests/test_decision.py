"""
Tests for the strong-reality decision
Classifying every structure of a group and finding witnessed generating pairs
"""
import pytest

from pbeauville.beauville.sigma import is_generating_pair
from pbeauville.strongreal.automorphisms import (
    brute_force_automorphisms,
    family_automorphisms,
    identity_automorphism,
    inversion_automorphism,
)
from pbeauville.strongreal.decision import classify_structures, witnessed_generating_pair
from pbeauville.strongreal.witness import is_inversion_witness


def test_abelian_structures_are_all_strongly_real(c5xc5):
    """Test that inversion makes all 1440 structures of C5 x C5 strongly real."""
    classification = classify_structures(c5xc5, family_automorphisms(c5xc5))

    assert classification.verdict == "purely_strongly_real"
    assert classification.structures == 1440
    assert classification.strongly_real == 1440
    assert classification.sampled is False
    assert all(entry["strongly_real"] for entry in classification.evidence)
    assert len(classification.evidence) == c5xc5.settings.report.evidence_limit


def test_identity_alone_witnesses_nothing(c5xc5):
    """Test that without an automorphism inducing -1 no structure is strongly real."""
    classification = classify_structures(c5xc5, [identity_automorphism(c5xc5)])

    assert classification.verdict == "purely_non_strongly_real"
    assert classification.structures == 1440
    assert classification.strongly_real == 0
    assert not any(entry["strongly_real"] for entry in classification.evidence)


def test_sampled_classification(c5xc5):
    """Test that a sample where every structure is strongly real stays undecided."""
    classification = classify_structures(c5xc5, family_automorphisms(c5xc5), samples=20, seed=3)

    assert classification.sampled is True
    assert classification.structures == 20
    assert classification.strongly_real == 20
    assert classification.verdict == "unknown"


def test_sampled_classification_without_candidates(c5xc5):
    """Test that a sample with no candidate automorphism is decided."""
    classification = classify_structures(c5xc5, [identity_automorphism(c5xc5)], samples=5, seed=3)

    assert classification.verdict == "purely_non_strongly_real"
    assert classification.strongly_real == 0


@pytest.mark.slow
def test_triangle_structures_are_all_strongly_real(triangle2):
    """Test that Aut(G) makes every one of the 589824 structures of the level-2 triangle quotient strongly real."""
    classification = classify_structures(triangle2, brute_force_automorphisms(triangle2))

    assert classification.verdict == "purely_strongly_real"
    assert classification.structures == 589824
    assert classification.strongly_real == 589824


@pytest.mark.slow
def test_metacyclic_structures_are_never_strongly_real(metacyclic521):
    """Test that no structure of metacyclic(5, 2, 1) is strongly real."""
    classification = classify_structures(metacyclic521, family_automorphisms(metacyclic521))

    assert classification.verdict == "purely_non_strongly_real"
    assert classification.structures == 562500000
    assert classification.strongly_real == 0


def test_witnessed_generating_pair(c5xc5):
    """Test that inversion on C5 x C5 has a witnessed generating pair."""
    theta = inversion_automorphism(c5xc5)
    found = witnessed_generating_pair(c5xc5, theta)

    assert found is not None
    x, y, g = found
    assert is_generating_pair(c5xc5, x, y)
    assert is_inversion_witness(c5xc5, theta, x, y, g)


def test_no_witnessed_generating_pair_for_identity(c5xc5):
    """Test that the identity inverts no generating pair up to conjugation."""
    assert witnessed_generating_pair(c5xc5, identity_automorphism(c5xc5)) is None


def test_witnessed_generating_pair_on_triangle_quotient(triangle2):
    """Test the witnessed pair for the inversion automorphism of the level-2 triangle quotient."""
    theta = inversion_automorphism(triangle2)
    x, y, g = witnessed_generating_pair(triangle2, theta)

    assert is_generating_pair(triangle2, x, y)
    assert is_inversion_witness(triangle2, theta, x, y, g)
