"""
Tests for pc presentations
Parsing, formatting, validation and the consistency check on build
"""
import pytest

from pbeauville.config import Consistency, Limits, Settings, get_settings
from pbeauville.engine.pcgroup import build_group, check_consistency
from pbeauville.engine.presentation import (
    PcPresentation,
    format_presentation,
    load_presentation,
    packaged_presentation,
    parse_presentation,
)
from pbeauville.errors import InconsistentPresentation, PresentationSyntaxError, TooLarge
from pbeauville.families.constructors import family_presentation
from pbeauville.families.params import make_params


def test_parse_q8():
    """Test that the packaged Q8 file parses into the expected relations."""
    pres = packaged_presentation("q8")

    assert pres.prime == 2
    assert pres.gens == ("x", "y", "c")
    assert pres.rel_orders == (2, 2, 2)
    assert pres.power_rels == {0: ((2, 1),), 1: ((2, 1),)}
    assert pres.conj_rels == {(0, 1): ((1, 1), (2, 1))}
    assert pres.distinguished == ("x", "y")
    assert pres.definitions == {2: (("comm", 0, 1),)}
    assert pres.order == 8


def test_format_then_parse_is_identity():
    """Test that the canonical text form parses back to the same presentation."""
    pres = family_presentation(make_params("triangle_quotient", e=3))

    assert parse_presentation(format_presentation(pres)) == pres


def test_trivial_relations_are_dropped():
    """Test that a conjugate relation saying two generators commute is not stored."""
    pres = parse_presentation("prime 3;\ngen x order 3;\ngen y order 3;\nconj y^x = y;\n")

    assert pres.conj_rels == {}


def test_load_from_file(tmp_path):
    """Test loading a presentation from a file path."""
    path = tmp_path / "c4.pc"
    path.write_text("# cyclic of order 4\nprime 2;\ngen a order 2;\ngen b order 2;\npow a = b;\n")

    pres = load_presentation(path)
    G = build_group(pres)

    assert G.order == 4
    assert G.order_of(G.named["a"]) == 4


def test_missing_semicolon_reports_line():
    """Test that syntax errors carry the offending line number."""
    with pytest.raises(PresentationSyntaxError, match="line 2"):
        parse_presentation("prime 2;\ngen x order 2\n")


def test_unknown_generator_in_word():
    """Test that words may only use declared generators."""
    with pytest.raises(PresentationSyntaxError, match="bad word factor"):
        parse_presentation("prime 2;\ngen x order 2;\npow x = q;\n")


def test_relative_order_must_be_power_of_prime():
    """Test that a relative order of 3 is rejected for p = 2."""
    with pytest.raises(PresentationSyntaxError, match="power of 2"):
        parse_presentation("prime 2;\ngen x order 3;\n")


def test_conjugate_relation_needs_earlier_exponent():
    """Test that y^x may only be given when x comes before y."""
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("prime 2;\ngen x order 2;\ngen y order 2;\nconj x^y = x;\n")


def test_missing_prime():
    """Test that the prime statement is required."""
    with pytest.raises(PresentationSyntaxError, match="prime"):
        parse_presentation("gen x order 2;\n")


def test_unknown_packaged_presentation():
    """Test that an unknown packaged name is a ValueError."""
    with pytest.raises(ValueError, match="Unknown packaged presentation"):
        packaged_presentation("nope")


def test_power_relation_may_only_use_later_generators():
    """Test model validation of power relations."""
    with pytest.raises(ValueError):
        PcPresentation(prime=2, gens=("x", "y"), rel_orders=(2, 2), power_rels={1: ((0, 1),)})


def test_inconsistent_presentation_rejected():
    """Test that a^2 = b together with b^a = b c collapses and is rejected on build."""
    text = "prime 2;\ngen a order 2;\ngen b order 2;\ngen c order 2;\npow a = b;\nconj b^a = b c;\n"

    with pytest.raises(InconsistentPresentation):
        build_group(parse_presentation(text))


def test_consistency_check_reads_the_cayley_table():
    """Test that a tabled group is checked on its Cayley table, so a corrupted entry is caught."""
    G = build_group(packaged_presentation("q8"))
    assert G._tables is not None

    cayley = G.tables.cayley
    cayley[1, 1] = (cayley[1, 1] + 1) % G.order

    with pytest.raises(InconsistentPresentation):
        check_consistency(G)


def test_sampled_consistency_check():
    """Test that groups above the exhaustive cap are checked on seeded random triples."""
    settings = get_settings().model_copy(update={
        "limits": Limits(table_order=1),
        "consistency": Consistency(exhaustive_order=8, samples=300),
    })

    G = build_group(packaged_presentation("triangle_e2"), settings=settings)

    assert G.order == 128
    assert G._tables is None


def test_build_respects_order_cap():
    """Test that groups above max_order are refused."""
    settings = Settings(limits=Limits(max_order=64))

    with pytest.raises(TooLarge):
        build_group(packaged_presentation("triangle_e2"), settings=settings)


def test_packaged_presentations_match_families():
    """Test that the packaged files describe groups of the expected orders."""
    assert build_group(packaged_presentation("q8")).order == 8
    assert build_group(packaged_presentation("c5xc5")).order == 25
    assert build_group(packaged_presentation("triangle_e2")).order == 128
