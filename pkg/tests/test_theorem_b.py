"""
Tests for constructive witnesses on triangle quotients
Congruence solving, pair witnesses and whole-structure witnesses
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbeauville.beauville.sigma import GeneratingPair
from pbeauville.beauville.structures import BeauvilleStructure, find_beauville_structure
from pbeauville.errors import NotTriangleQuotient, WrongForm
from pbeauville.strongreal.automorphisms import inversion_automorphism
from pbeauville.strongreal.decision import is_strong_real_witness
from pbeauville.strongreal.theorem_b import (
    CongruenceParams,
    TriangleWitnessBuilder,
    congruences_hold,
    decompose_uv,
    pair_witness,
    solve_rs,
    theorem_b_witness,
)
from pbeauville.strongreal.witness import is_inversion_witness


def test_solve_rs_for_distinguished_pair():
    """Test R = S = 0 when u = x and v = y."""
    params = CongruenceParams.from_exponents(2, 0, 0, 0, 0, 0, 0)
    assert (params.n, params.m) == (1, 1)
    assert solve_rs(params) == (0, 0)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_solve_rs_satisfies_congruences(data):
    """Test that the solution satisfies the x and y congruences and that the z congruence follows."""
    e = data.draw(st.integers(min_value=2, max_value=6))
    top, low = 2 ** e - 1, 2 ** (e - 1) - 1
    i1, j1, i2, j2 = (data.draw(st.integers(min_value=0, max_value=top)) for _ in range(4))
    k1, k2 = (data.draw(st.integers(min_value=0, max_value=low)) for _ in range(2))
    params = CongruenceParams.from_exponents(e, i1, j1, k1, i2, j2, k2)
    R, S = solve_rs(params)
    assert congruences_hold(params, R, S) == {"powers_of_x": True, "powers_of_y": True, "powers_of_z": True}


def test_congruence_params_validate_inverses():
    """Test that n must invert 1 + 2 i1."""
    with pytest.raises(ValueError):
        CongruenceParams(e=2, i1=1, j1=0, k1=0, i2=0, j2=0, k2=0, n=1, m=1)


def test_decompose_uv(triangle2):
    """Test reading the congruence parameters off u and v."""
    G = triangle2
    assert decompose_uv(G, G.named["x"], G.named["y"]) == CongruenceParams.from_exponents(2, 0, 0, 0, 0, 0, 0)
    with pytest.raises(WrongForm):
        decompose_uv(G, G.named["y"], G.named["x"])


def test_pair_witness_of_distinguished_pair(triangle2):
    """Test that the constructive witness for (x, y) is the identity."""
    G = triangle2
    assert pair_witness(G, G.named["x"], G.named["y"]) == G.identity


def test_pair_witness_on_every_form(triangle2):
    """Test the constructive witness for u in <x, Φ> and v in <y, Φ> on a grid of exponents."""
    G = triangle2
    iota = inversion_automorphism(G)
    x, y, z = G.named["x"], G.named["y"], G.named["z"]
    for i in (1, 3):
        for j in (0, 2):
            for k in (0, 1):
                u = G.product([G.power_of(x, i), G.power_of(y, j), G.power_of(z, k)])
                v = G.product([G.power_of(y, 1 + j), G.power_of(x, 2 - j), G.power_of(z, 1 - k)])
                assert is_inversion_witness(G, iota, u, v, pair_witness(G, u, v))


def test_witness_for_found_structure(triangle2):
    """Test that the witness for a structure satisfies the definition with g1 = 1."""
    G = triangle2
    structure = find_beauville_structure(G)
    assert structure is not None
    witness = theorem_b_witness(G, structure)
    assert is_strong_real_witness(G, structure, witness)
    assert witness.g1 == G.identity


def test_builder_shares_theta_across_second_pairs(triangle2):
    """Test that one builder serves several second pairs with the same θ."""
    G = triangle2
    structure = find_beauville_structure(G)
    builder = TriangleWitnessBuilder(G, structure.pair1)
    first = builder.witness(structure.pair2)
    swapped = GeneratingPair(structure.pair2.y, structure.pair2.x)
    second = builder.witness(swapped)
    assert first.theta == second.theta
    assert is_strong_real_witness(G, BeauvilleStructure(structure.pair1, swapped), second)


def test_builder_needs_triangle_quotient(q8):
    """Test NotTriangleQuotient outside the family."""
    with pytest.raises(NotTriangleQuotient):
        TriangleWitnessBuilder(q8, GeneratingPair(*q8.distinguished))
