"""
Tests for pc group arithmetic
Collection, normal forms, rank tables and derived operations
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ranks128 = st.integers(min_value=0, max_value=127)


def test_triangle_order_and_generator_orders(triangle2):
    """Test |G| = 128 and o(x) = 4 for the level-2 triangle quotient."""
    assert triangle2.order == 128
    assert triangle2.order_of(triangle2.named["x"]) == 4
    assert triangle2.order_of(triangle2.named["z"]) == 2


def test_triangle_normal_form_of_yx(triangle2):
    """Test y·x = x y z."""
    G = triangle2
    assert G.multiply(G.named["y"], G.named["x"]) == (1, 1, 1, 0, 0)


def test_triangle_commutator_of_y_squared(triangle2):
    """Test [y^2, x] = w."""
    G = triangle2
    assert G.commutator(G.power_of(G.named["y"], 2), G.named["x"]) == G.named["w"]


def test_defining_commutators(triangle2):
    """Test z = [y, x], t = [z, x] and w = [z, y]."""
    G = triangle2
    x, y, z = G.named["x"], G.named["y"], G.named["z"]
    assert G.commutator(y, x) == z
    assert G.commutator(z, x) == G.named["t"]
    assert G.commutator(z, y) == G.named["w"]


def test_metacyclic_normal_forms(metacyclic521):
    """Test products in metacyclic(5, 2, 1), whose normal form is b^β a^α."""
    G = metacyclic521
    a, b = G.named["a"], G.named["b"]

    assert G.order == 625
    assert G.multiply(b, a) == (1, 1)
    assert G.multiply(a, b) == (1, 6)
    assert G.multiply(G.power_of(a, 21), b) == G.multiply(b, a)
    assert G.conjugate(a, b) == G.power_of(a, 6)


def test_element_parser(triangle2):
    """Test parsing words in generator names."""
    G = triangle2
    assert G.element("x y^2") == (1, 2, 0, 0, 0)
    assert G.element("y^-1 y") == G.identity
    with pytest.raises(ValueError, match="Unknown generator"):
        G.element("q")


def test_rank_round_trip(triangle2):
    """Test that ranks enumerate the elements in order."""
    G = triangle2
    for r, u in enumerate(G.elements()):
        assert G.rank(u) == r
        assert G.unrank(r) == u


def test_q8_squares(q8):
    """Test x^2 = y^2 = c in Q8 and that the non-central elements have order 4."""
    G = q8
    c = G.named["c"]
    assert G.power_of(G.named["x"], 2) == c
    assert G.power_of(G.named["y"], 2) == c
    orders = sorted(G.order_of(u) for u in G.elements())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]


def test_packaged_q8_matches_family(q8, packaged_q8):
    """Test that the packaged Q8 file and the five-tuple family give the same multiplication."""
    for u in q8.elements():
        for v in q8.elements():
            assert q8.multiply(u, v) == packaged_q8.multiply(u, v)


def test_tables_disabled_above_cap(untabled_triangle2):
    """Test that no rank tables exist above the table cap."""
    assert untabled_triangle2.tables is None


@settings(max_examples=200, deadline=None)
@given(ranks128, ranks128, ranks128)
def test_collection_is_associative(untabled_triangle2, a, b, c):
    """Test (uv)w = u(vw) under collection."""
    G = untabled_triangle2
    u, v, w = G.unrank(a), G.unrank(b), G.unrank(c)
    assert G.multiply(G.multiply(u, v), w) == G.multiply(u, G.multiply(v, w))


@settings(max_examples=200, deadline=None)
@given(ranks128, ranks128)
def test_tables_agree_with_collection(triangle2, untabled_triangle2, a, b):
    """Test that table lookups and collection give the same products and inverses."""
    assert triangle2.tables is not None
    u, v = triangle2.unrank(a), triangle2.unrank(b)
    assert triangle2.multiply(u, v) == untabled_triangle2.multiply(u, v)
    assert triangle2.invert(u) == untabled_triangle2.invert(u)
    assert triangle2.order_of(u) == untabled_triangle2.order_of(u)


@settings(max_examples=100, deadline=None)
@given(ranks128, st.integers(min_value=-9, max_value=9), st.integers(min_value=-9, max_value=9))
def test_power_laws(untabled_triangle2, a, m, n):
    """Test u^(m+n) = u^m u^n, including negative exponents."""
    G = untabled_triangle2
    u = G.unrank(a)
    assert G.power_of(u, m + n) == G.multiply(G.power_of(u, m), G.power_of(u, n))
    assert G.multiply(u, G.invert(u)) == G.identity
    assert G.power_of(u, -1) == G.invert(u)
