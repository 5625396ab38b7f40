"""
Tests for automorphisms
Brute-force Aut(G), extension from generator images and the parametrized families
"""
import pytest

from pbeauville.errors import InvalidParams, NotInFamily, TooLarge
from pbeauville.families.constructors import construct
from pbeauville.families.params import make_params
from pbeauville.strongreal.automorphisms import (
    Automorphism,
    brute_force_automorphisms,
    class2_aut,
    class2_family_parameters,
    extend_to_automorphism,
    family_automorphisms,
    identity_automorphism,
    induced_matrix_mod_frattini,
    inversion_automorphism,
    is_minus_identity,
    metacyclic_aut,
    metacyclic_aut_family,
    relations_hold,
)


def test_q8_has_24_automorphisms(q8):
    """Test |Aut(Q8)| = 24."""
    auts = brute_force_automorphisms(q8)
    assert len(auts) == 24
    assert all(relations_hold(q8, theta.images) for theta in auts)


def test_d8_has_8_automorphisms(d8):
    """Test |Aut(D8)| = 8."""
    assert len(brute_force_automorphisms(d8)) == 8


def test_abelian_automorphisms(c5xc5):
    """Test |Aut(C5 x C5)| = |GL(2, 5)| = 480."""
    assert len(brute_force_automorphisms(c5xc5)) == 480


def test_brute_force_is_closed_under_composition(q8):
    """Test that compositions and inverses of automorphisms stay in the list."""
    auts = brute_force_automorphisms(q8)
    keys = {theta.images for theta in auts}
    for theta in auts[:6]:
        for phi in auts[:6]:
            assert theta.compose(phi).images in keys
        assert theta.inverse().images in keys
        assert theta.compose(theta.inverse()).is_identity()


def test_brute_force_does_not_depend_on_workers(d8):
    """Test that the sorted result is the same with a process pool."""
    serial = [theta.images for theta in brute_force_automorphisms(d8, workers=1)]
    parallel = [theta.images for theta in brute_force_automorphisms(d8, workers=2)]
    assert serial == parallel


def test_brute_force_is_capped(class2_mixed):
    """Test that the scan refuses groups above its cap."""
    with pytest.raises(TooLarge):
        brute_force_automorphisms(class2_mixed)


def test_permutation_is_a_bijection(triangle2):
    """Test that the permutation of the inversion automorphism is a bijection preserving products."""
    G = triangle2
    iota = inversion_automorphism(G)
    perm = iota.permutation()
    assert sorted(perm.tolist()) == list(range(G.order))
    u, v = G.element("x y^3 z"), G.element("y x^2 w")
    assert G.unrank(int(perm[G.rank(G.multiply(u, v))])) == G.multiply(iota.apply(u), iota.apply(v))


def test_extension(triangle2):
    """Test extending generator images to automorphisms."""
    G = triangle2
    x, y = G.distinguished
    assert extend_to_automorphism(G, x, y).is_identity()
    assert extend_to_automorphism(G, x, x) is None
    assert extend_to_automorphism(G, x, G.power_of(x, 2)) is None
    assert identity_automorphism(G).is_identity()


def test_inversion_induces_minus_identity(triangle2):
    """Test that inverting x and y acts as -1 on G/Φ(G)."""
    iota = inversion_automorphism(triangle2)
    matrix = induced_matrix_mod_frattini(triangle2, iota)
    assert matrix == ((1, 0), (0, 1))
    assert is_minus_identity(triangle2, matrix)
    assert iota.order() == 2


def test_automorphism_json(triangle2):
    """Test the JSON form of automorphisms and its validation."""
    iota = inversion_automorphism(triangle2)
    assert Automorphism.from_json(triangle2, iota.to_json()).images == iota.images
    with pytest.raises(ValueError):
        Automorphism.from_json(triangle2, iota.to_json()[:2])


def test_metacyclic_family_member(metacyclic521):
    """Test (m, n, r, s) = (1, 1, 1, 1) and its induced matrix [[n, s], [0, 1]]."""
    G = metacyclic521
    theta = metacyclic_aut(G, 1, 1, 1, 1)
    a, b = G.named["a"], G.named["b"]
    assert theta.apply(a) == G.multiply(G.power_of(b, 5), a)
    assert theta.apply(b) == G.multiply(G.power_of(b, 6), a)
    assert induced_matrix_mod_frattini(G, theta) == ((1, 1), (0, 1))


def test_metacyclic_family_rejects_bad_params(metacyclic521, triangle2):
    """Test the parameter ranges and the family check."""
    with pytest.raises(InvalidParams):
        metacyclic_aut(metacyclic521, 1, 5, 1, 1)
    with pytest.raises(InvalidParams):
        metacyclic_aut(metacyclic521, 6, 1, 1, 1)
    with pytest.raises(NotInFamily):
        metacyclic_aut(triangle2, 1, 1, 1, 1)


def test_metacyclic_family_on_small_group(metacyclic321):
    """Test that every member of the family extends, and the family matches Aut(G) by brute force."""
    G = metacyclic321
    members = list(metacyclic_aut_family(G))
    assert all(theta is not None for _, theta in members)
    family = {theta.images for _, theta in members}
    assert family == {theta.images for theta in brute_force_automorphisms(G)}


@pytest.mark.slow
def test_metacyclic_family_matches_brute_force(metacyclic521):
    """Test the 12500 family automorphisms of metacyclic(5, 2, 1) against the brute-force scan."""
    family = family_automorphisms(metacyclic521)
    brute = brute_force_automorphisms(metacyclic521)
    assert len(brute) == 12500
    assert {theta.images for theta in family} == {theta.images for theta in brute}
    assert not any(is_minus_identity(metacyclic521, induced_matrix_mod_frattini(metacyclic521, theta))
                   for theta in family)


def test_class2_family_member(class2_mixed):
    """Test (m, n, r, s, c_a, c_b) = (1, 1, 1, 1, 1, 1) in Class2Beauville(5, 3, 2, 2, 1)."""
    G = class2_mixed
    one = G.identity
    theta = class2_aut(G, 1, 1, 1, 1, one, one)
    assert relations_hold(G, theta.images)
    assert class2_family_parameters(G, theta) == (1, 1, 1, 1, one, one)
    assert class2_family_parameters(G, identity_automorphism(G)) is not None


def test_class2_family_rejects_bad_params(class2_mixed):
    """Test that p | s and c_a outside G' are refused."""
    G = class2_mixed
    one = G.identity
    with pytest.raises(InvalidParams):
        class2_aut(G, 1, 1, 1, 5, one, one)
    with pytest.raises(InvalidParams):
        class2_aut(G, 1, 1, 1, 1, G.named["a"], one)


def test_class2_family_needs_mixed_shape():
    """Test that powerful class-2 groups have no parametrized family."""
    G = construct(make_params("class2_beauville", p=5, e=2, i=1, j=1, k=0))
    with pytest.raises(NotInFamily):
        class2_aut(G, 1, 1, 1, 1, G.identity, G.identity)


def test_class2_family_never_inverts(class2_mixed):
    """Test that no residue-level family automorphism induces -1 on G/Φ(G)."""
    auts = family_automorphisms(class2_mixed)
    assert auts
    matrices = {induced_matrix_mod_frattini(class2_mixed, theta) for theta in auts}
    assert not any(is_minus_identity(class2_mixed, m) for m in matrices)
    assert all((m[0][0] * m[1][1] - m[0][1] * m[1][0]) % 5 != 0 for m in matrices)
