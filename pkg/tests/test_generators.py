import pytest

from semwidth.cq import parse_query, render_query
from semwidth.errors import CapExceededError
from semwidth.generators import gen_inflation, gen_parity_grid, gen_random_cq, origin_map
from semwidth.homomorphism import compute_core, is_core, is_equivalent, is_homomorphism
from semwidth.hypergraph import hypergraph_of


def test_grid_shapes():
    q = gen_parity_grid(1, 2)
    assert render_query(q) == "ans() <- R(x00,x01)." and is_core(q)
    assert len(gen_parity_grid(2, 2).body) == 4
    assert len(compute_core(gen_parity_grid(2, 2)).core.body) == 1
    assert len(gen_parity_grid(2, 3).body) == 7


def test_grid_orientation_is_even_to_odd():
    for a in gen_parity_grid(3, 4).body:
        (r1, c1), (r2, c2) = [(int(t.name[1]), int(t.name[2])) for t in a.args]
        assert (r1 + c1) % 2 == 0 and (r2 + c2) % 2 == 1


def test_grid_errors():
    with pytest.raises(CapExceededError):
        gen_parity_grid(9, 9)
    with pytest.raises(ValueError):
        gen_parity_grid(0, 3)
    with pytest.raises(ValueError):
        gen_parity_grid(1, 1)


def test_large_grid_names_stay_distinct():
    q = gen_parity_grid(2, 11)
    assert len(q.variables) == 22


def test_random_determinism_and_validity():
    assert gen_random_cq(7, 5, 6) == gen_random_cq(7, 5, 6)
    assert is_core(gen_random_cq(3, 4, 1))
    for seed in range(100):
        q = gen_random_cq(seed, 6, 5, 3, 3, seed % 3)
        assert parse_query(render_query(q)) == q
        hypergraph_of(q)
    with pytest.raises(ValueError):
        gen_random_cq(0, 0, 1)


def test_inflation():
    q = parse_query("ans() <- R(x,y).")
    assert gen_inflation(q, 0, 1) == q
    p = gen_inflation(q, 3, 1)
    assert len(p.body) == 4 and is_equivalent(p, q)
    assert is_homomorphism(origin_map(q, p), p, q)


def test_inflation_keeps_head():
    q = parse_query("ans(x) <- R(x,y), S(y,z).")
    for seed in range(20):
        p = gen_inflation(q, 4, seed)
        assert p.head == q.head and is_equivalent(p, q)
        assert is_homomorphism(origin_map(q, p), p, q)
