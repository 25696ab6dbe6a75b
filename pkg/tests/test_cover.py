import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_rho, is_close, lp_rho_star, random_hypergraph
from semwidth.cover import (
    FractionalCover,
    make_cover,
    parse_rational,
    rational_str,
    rho_integral,
    rho_star,
    transfer_cover,
    verify_cover,
    verify_pair,
)
from semwidth.errors import InfeasibleCoverError, NotAHomomorphismError, SemwidthError
from semwidth.hypergraph import Hypergraph
from semwidth.simplex import UnboundedLP, maximize

E = frozenset
F = Fraction
TRIANGLE = Hypergraph.from_edges([E("xy"), E("yz"), E("zx")])


def test_simplex_small_lp():
    # max x + y  s.t. x + 2y <= 4, 3x + y <= 6
    sol = maximize([[1, 2], [3, 1]], [4, 6], [1, 1])
    assert sol.value == F(14, 5)
    assert sol.primal == [F(8, 5), F(6, 5)]
    assert sum(d * b for d, b in zip(sol.dual, [4, 6])) == sol.value


def test_simplex_unbounded():
    with pytest.raises(UnboundedLP):
        maximize([[1, -1]], [1], [1, 1])


def test_rationals_serialise_as_p_over_q():
    assert rational_str(F(2)) == "2/1"
    assert rational_str(F(3, 2)) == "3/2"
    assert parse_rational("6/4") == F(3, 2)


def test_single_edge():
    h = Hypergraph.from_edges([E("xy")])
    pair = rho_star(h)
    assert pair.value == 1 and pair.primal.weights == {E("xy"): 1}
    assert verify_pair(h, pair)


def test_triangle_with_certificates():
    pair = rho_star(TRIANGLE)
    assert pair.value == F(3, 2)
    assert set(pair.primal.weights.values()) == {F(1, 2)}
    assert pair.dual.weights == {"x": F(1, 2), "y": F(1, 2), "z": F(1, 2)}
    assert verify_pair(TRIANGLE, pair)


def test_empty_target():
    pair = rho_star(TRIANGLE, [])
    assert pair.value == 0 and not any(pair.primal.weights.values())


def test_target_outside_vertices():
    with pytest.raises(InfeasibleCoverError):
        rho_star(TRIANGLE, ["w"])


def test_integral_examples():
    assert rho_integral(Hypergraph.from_edges([E("xyz"), E("x")]), "xy").count == 1
    assert rho_integral(TRIANGLE).count == 2
    path = rho_integral(Hypergraph.from_edges([E("ab"), E("bc"), E("cd")]))
    assert path.count == 2 and set(path.edges) == {E("ab"), E("cd")}


def test_verify_cover_examples():
    assert verify_cover(TRIANGLE, TRIANGLE.vertices, rho_star(TRIANGLE).primal)
    third = make_cover(TRIANGLE.vertices, {e: F(1, 3) for e in TRIANGLE.edges})
    assert not verify_cover(TRIANGLE, TRIANGLE.vertices, third)
    assert verify_cover(TRIANGLE, E(), make_cover(E(), {}))
    with pytest.raises(SemwidthError):
        verify_cover(TRIANGLE, E("x"), make_cover(E("x"), {E("xw"): 1}))


def test_transfer_examples():
    g = Hypergraph.from_edges([E("ab"), E("bc")])
    x = make_cover(g.vertices, {E("ab"): 1, E("bc"): 1})
    assert transfer_cover({v: v for v in "abc"}, g, g, x).weights == x.weights
    out = transfer_cover({"a": "c", "b": "b", "c": "c"}, g, Hypergraph.from_edges([E("bc")]), x)
    assert out.weights == {E("bc"): 2} and out.target == E("bc") and out.total == 2
    loop = Hypergraph.from_edges([E("u")])
    out = transfer_cover({v: "u" for v in "xyz"}, TRIANGLE, loop, rho_star(TRIANGLE).primal)
    assert out.weights == {E("u"): F(3, 2)} and out.target == E("u")


def test_transfer_gives_zero_to_unused_edges():
    g = Hypergraph.from_edges([E("ab")])
    h = Hypergraph.from_edges([E("ab"), E("bc")])
    out = transfer_cover({"a": "a", "b": "b"}, g, h, make_cover(g.vertices, {E("ab"): 1}))
    assert out.weights == {E("ab"): 1, E("bc"): 0}


def test_transfer_rejects_bad_inputs():
    g = Hypergraph.from_edges([E("ab"), E("bc")])
    x = make_cover(g.vertices, {E("ab"): 1, E("bc"): 1})
    with pytest.raises(NotAHomomorphismError):
        transfer_cover({"a": "a", "b": "b", "c": "c"}, g, Hypergraph.from_edges([E("ab"), E("c")]), x)
    with pytest.raises(InfeasibleCoverError):
        transfer_cover({v: v for v in "abc"}, g, g, make_cover(g.vertices, {E("ab"): 1}))


def test_cover_json():
    doc = rho_star(TRIANGLE).primal.to_json()
    assert doc["total"] == "3/2"
    assert doc["weights"][0] == {"edge": ["x", "y"], "w": "1/2"}
    assert FractionalCover.from_json(doc) == rho_star(TRIANGLE).primal
    with pytest.raises(SemwidthError):
        FractionalCover.from_json({**doc, "total": "1/1"})


hypergraphs = st.builds(lambda s: random_hypergraph(random.Random(s), max_v=7, max_e=9), st.integers(0, 10**6))


@settings(max_examples=150, deadline=None)
@given(hypergraphs, st.randoms(use_true_random=False))
def test_lp_properties(h, rnd):
    verts = h.sorted_vertices()
    w2 = E(rnd.sample(verts, rnd.randint(0, len(verts))))
    w1 = E(rnd.sample(sorted(w2), rnd.randint(0, len(w2))))
    p1, p2 = rho_star(h, w1), rho_star(h, w2)
    assert verify_pair(h, p1) and verify_pair(h, p2)
    assert p1.value <= p2.value
    assert is_close(p2.value, lp_rho_star(h, w2))
    r = rho_integral(h, w2)
    assert r.count == brute_rho(h, w2)
    assert p2.value <= r.count <= len(h.edges)
    assert verify_cover(h, w2, r.as_fractional())
