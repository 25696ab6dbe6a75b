import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semwidth.cq import Const, Var, parse_query
from semwidth.errors import DegenerateHypergraphError, SemwidthError, UnsupportedMappingError
from semwidth.generators import gen_inflation, gen_random_cq
from semwidth.homomorphism import find_homomorphism
from semwidth.hypergraph import Hypergraph, check_homomorphism, hypergraph_of, image, vertex_map_of

E = frozenset


def test_hypergraph_of_examples():
    h = hypergraph_of(parse_query("ans() <- R(x,y), S(y,z)."))
    assert h.vertices == {"x", "y", "z"} and h.edges == {E("xy"), E("yz")}
    assert hypergraph_of(parse_query("ans() <- R(x,y), S(x,y).")).edges == {E("xy")}
    h = hypergraph_of(parse_query('ans() <- R(x,"c").'))
    assert h.vertices == {"x"} and h.edges == {E("x")}


def test_constant_only_body_is_degenerate():
    with pytest.raises(DegenerateHypergraphError):
        hypergraph_of(parse_query('ans() <- R("a","b").'))


def test_constant_only_atom_adds_no_edge():
    h = hypergraph_of(parse_query('ans() <- R(x,y), R("a","b").'))
    assert h.edges == {E("xy")}


def test_validation():
    with pytest.raises(SemwidthError):
        Hypergraph(E("ab"), E([E("a")]))
    with pytest.raises(SemwidthError):
        Hypergraph(E("a"), E([E("ab")]))
    with pytest.raises(SemwidthError):
        Hypergraph(E("a"), E([E()]))


def test_image_examples():
    g = Hypergraph.from_edges([E("ab"), E("bc")])
    assert image({v: v for v in "abc"}, g) == g
    f = {"a": "c", "b": "b", "c": "c"}
    assert image(f, g).edges == {E("bc")}
    single = Hypergraph.from_edges([E("a"), E("ab")])
    collapsed = image({"a": "u", "b": "u"}, single)
    assert collapsed.vertices == {"u"} and collapsed.edges == {E("u")}


def test_check_homomorphism_examples():
    g = Hypergraph.from_edges([E("ab"), E("bc")])
    assert check_homomorphism({v: v for v in "abc"}, g, g)
    f = {"a": "c", "b": "b", "c": "c"}
    assert check_homomorphism(f, g, Hypergraph.from_edges([E("bc")]))
    assert not check_homomorphism(f, g, Hypergraph.from_edges([E("ab")]))
    assert not check_homomorphism({"a": "a"}, g, g)


def test_json_sorted_and_round_trip():
    h = Hypergraph.from_edges([E("zy"), E("ax")])
    assert h.to_json() == {"vertices": ["a", "x", "y", "z"], "edges": [["a", "x"], ["y", "z"]]}
    assert Hypergraph.from_json(h.to_json()) == h


def test_vertex_map_flags_constants():
    assert vertex_map_of({"x": Var("y")}) == {"x": "y"}
    with pytest.raises(UnsupportedMappingError):
        vertex_map_of({"x": Const("1")})


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000), st.integers(0, 3))
def test_query_homomorphisms_induce_hypergraph_homomorphisms(seed, steps):
    q = gen_random_cq(seed, 5, 4, 3, 2)
    p = gen_inflation(q, steps, seed)
    for a, b in ((p, q), (q, p)):
        h = find_homomorphism(a, b)
        assert h is not None
        assert check_homomorphism(vertex_map_of(h), hypergraph_of(a), hypergraph_of(b))
