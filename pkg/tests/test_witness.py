"""
Tests for inversion witnesses
Witness sets, basis changes and the inversion defect of the triangle quotient
"""
import pytest

from pbeauville.errors import NotAWitness, NotTriangleQuotient, WrongForm
from pbeauville.strongreal.automorphisms import inversion_automorphism
from pbeauville.strongreal.witness import (
    basis_change_forward,
    basis_change_transfer,
    inversion_defect,
    inversion_witness,
    is_inversion_witness,
    witness_set,
    z_form,
)


def test_identity_witnesses_the_distinguished_pair(triangle2):
    """Test that g = 1 witnesses (x, y) under the inversion automorphism."""
    G = triangle2
    iota = inversion_automorphism(G)
    x, y = G.distinguished
    assert is_inversion_witness(G, iota, x, y, G.identity)
    assert inversion_witness(G, iota, x, y) == G.identity


def test_witness_set_is_a_coset_of_the_center(triangle2):
    """Test that the witnesses for a generating pair form a coset of C(x) ∩ C(y) = Z(G)."""
    G = triangle2
    iota = inversion_automorphism(G)
    x, y = G.distinguished
    witnesses = witness_set(G, iota, x, y)
    assert sorted(witnesses) == sorted(G.rank(u) for u in (G.identity, G.named["t"], G.named["w"],
                                                           G.multiply(G.named["t"], G.named["w"])))


def test_untabled_witness_search_agrees(triangle2, untabled_triangle2):
    """Test the orbit and coset search against the full table scan."""
    iota = inversion_automorphism(triangle2)
    iota_untabled = inversion_automorphism(untabled_triangle2)
    x, y = triangle2.element("x y^2"), triangle2.element("y z")
    assert inversion_witness(untabled_triangle2, iota_untabled, x, y) == inversion_witness(triangle2, iota, x, y)
    assert witness_set(untabled_triangle2, iota_untabled, x, y) == witness_set(triangle2, iota, x, y)


def test_non_witness(triangle2):
    """Test that z does not witness (x, y): it does not commute with x."""
    G = triangle2
    iota = inversion_automorphism(G)
    x, y = G.distinguished
    assert not is_inversion_witness(G, iota, x, y, G.named["z"])


@pytest.mark.parametrize("basis", ["xy_x", "xy_y"])
def test_basis_change_both_directions(triangle2, basis):
    """Test that a witness for (x, y) moves to the new basis and back."""
    G = triangle2
    iota = inversion_automorphism(G)
    x, y = G.distinguished
    h = basis_change_forward(G, iota, x, y, basis, G.identity)
    second = x if basis == "xy_x" else y
    assert is_inversion_witness(G, iota, G.multiply(x, y), second, h)
    assert basis_change_transfer(G, iota, x, y, basis, h) == G.identity


def test_basis_change_rejects_non_witness(triangle2):
    """Test NotAWitness for an element that witnesses nothing."""
    G = triangle2
    iota = inversion_automorphism(G)
    x, y = G.distinguished
    with pytest.raises(NotAWitness):
        basis_change_transfer(G, iota, x, y, "xy_x", G.named["z"])
    with pytest.raises(NotAWitness):
        basis_change_forward(G, iota, x, y, "xy_y", G.named["z"])
    with pytest.raises(ValueError, match="Unknown basis"):
        basis_change_forward(G, iota, x, y, "yx", G.identity)


def test_inversion_defect_example(triangle2):
    """Test u θ(u) = [u^-1, y^2] for u = x z at level 2."""
    G = triangle2
    u = G.element("x z")
    defect, argument = inversion_defect(G, u, "x_side")
    assert argument == G.power_of(G.named["y"], 2)
    assert defect == G.commutator(G.invert(u), argument)


def test_inversion_defect_both_sides(triangle2):
    """Test the defect identity on every element of either form at level 2."""
    G = triangle2
    x, y, z = G.named["x"], G.named["y"], G.named["z"]
    for odd in (1, 3):
        for other in range(4):
            for k in range(2):
                for side, u in (
                    ("x_side", G.product([G.power_of(x, odd), G.power_of(y, other), G.power_of(z, k)])),
                    ("y_side", G.product([G.power_of(y, odd), G.power_of(x, other), G.power_of(z, k)])),
                ):
                    defect, argument = inversion_defect(G, u, side)
                    assert defect == G.commutator(G.invert(u), argument)


def test_z_form(triangle2):
    """Test reading exponents off the two normal forms."""
    G = triangle2
    assert z_form(G, G.element("x y^2 z"), "x_side") == (1, 2, 1)
    assert z_form(G, G.element("y x"), "y_side") == (1, 1, 0)
    with pytest.raises(WrongForm):
        z_form(G, G.named["t"], "x_side")


def test_defect_guards(triangle2, q8):
    """Test WrongForm for even leading exponents and NotTriangleQuotient elsewhere."""
    with pytest.raises(WrongForm):
        inversion_defect(triangle2, triangle2.named["y"], "x_side")
    with pytest.raises(WrongForm):
        inversion_defect(triangle2, triangle2.named["x"], "y_side")
    with pytest.raises(ValueError, match="Unknown side"):
        inversion_defect(triangle2, triangle2.named["x"], "z_side")
    with pytest.raises(NotTriangleQuotient):
        inversion_defect(q8, q8.named["x"], "x_side")
