import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_evaluate
from semwidth.cq import (
    Atom,
    ConjunctiveQuery,
    Const,
    Database,
    Var,
    canonical_database,
    evaluate,
    make_query,
    parse_query,
    query_to_json,
    render_query,
)
from semwidth.errors import ArityError, QuerySyntaxError, SafetyError, SemwidthError
from semwidth.generators import gen_random_cq


def test_parse_head_and_atoms():
    q = parse_query("ans(x) <- R(x,y), R(y,z).")
    assert q.head == ("x",)
    assert len(q.body) == 2
    assert q.variables == {"x", "y", "z"}


def test_parse_boolean():
    q = parse_query("ans() <- R(x,x).")
    assert q.is_boolean() and len(q.body) == 1


def test_safety_violation():
    with pytest.raises(SafetyError):
        parse_query("ans(z) <- R(x,y).")


def test_duplicates_collapse_and_whitespace():
    q = parse_query("  ans( x )<-R( x , y ) ,\n R(x,y)  . ")
    assert len(q.body) == 1
    assert render_query(q) == "ans(x) <- R(x,y)."


def test_constants():
    q = parse_query('ans(x) <- R(x, "a b"), S(x, 42), T("q\\"t").')
    assert q.constants == {"a b", "42", 'q"t'}
    assert parse_query(render_query(q)) == q


@pytest.mark.parametrize("text,line,col", [
    ("ans(x) <- R(x,,y).", 1, 15),
    ("ans(x) <- R(x,y)", 1, 17),
    ("ans(x) <-\n  r(x).", 2, 3),
    ("query(x) <- R(x).", 1, 1),
    ("ans(X) <- R(X).", 1, 5),
    ("ans() <- .", 1, 10),
    ("ans() <- R(x). extra", 1, 16),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(QuerySyntaxError) as err:
        parse_query(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_arity_mismatch():
    with pytest.raises(ArityError):
        parse_query("ans() <- R(x), R(x,y).")


def test_empty_body_rejected():
    with pytest.raises(SemwidthError):
        ConjunctiveQuery((), frozenset())


def test_make_query():
    q = make_query(["x"], [("R", ["x", Const("1")])])
    assert q == parse_query('ans(x) <- R(x,"1").')


def test_evaluate_examples():
    db = Database.from_json({"relations": {"R": [["1", "2"], ["2", "3"]]}})
    assert evaluate(parse_query("ans(x) <- R(x,y)."), db).tuples == {("1",), ("2",)}
    db2 = Database.from_json({"relations": {"R": [["1", "2"]]}})
    assert not evaluate(parse_query("ans(x) <- R(x,x)."), db2).tuples


def test_evaluate_on_own_canonical_database():
    q = parse_query("ans() <- R(x,y), S(y,z), R(z,x).")
    assert evaluate(q, canonical_database(q)).tuples == {()}


def test_canonical_database_is_fresh():
    q = parse_query('ans() <- R(x,"?x"), R("??x", y).')
    db = canonical_database(q)
    frozen = db.universe - q.constants
    assert len(frozen) == 2 and not frozen & q.constants


def test_database_json_round_trip_and_universe():
    data = {"relations": {"R": [["1", "2"]], "S": [["2"]]}}
    db = Database.from_json(data)
    assert db.universe == {"1", "2"}
    assert Database.from_json(db.to_json()) == db


def test_answer_json_format():
    db = Database.from_json({"relations": {"R": [["b", "a"], ["a", "b"]]}})
    ans = evaluate(parse_query("ans(y,x) <- R(x,y)."), db)
    assert ans.to_json() == {"attributes": ["y", "x"], "tuples": [["a", "b"], ["b", "a"]]}


def test_query_json_format():
    doc = query_to_json(parse_query('ans(x) <- R(x,"c").'))
    assert doc["head"] == ["x"]
    assert doc["atoms"] == [{"relation": "R", "args": [{"var": "x"}, {"const": "c"}]}]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6), st.integers(1, 3), st.integers(0, 2))
def test_random_queries_round_trip(seed, nv, na, arity, head):
    q = gen_random_cq(seed, nv, na, arity, 2, head)
    assert parse_query(render_query(q)) == q


relations = st.dictionaries(
    st.sampled_from(["R", "S"]),
    st.sets(st.tuples(st.sampled_from("123"), st.sampled_from("123")), max_size=6),
    min_size=2, max_size=2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), relations)
def test_evaluate_matches_enumeration(seed, rel):
    q = gen_random_cq(seed, 4, 3, 2, 2, head_size=seed % 3)
    arities = {a.relation: len(a.args) for a in q.body}
    fixed = {r: {t[:arities.get(r, 2)] for t in ts} for r, ts in rel.items()}
    db = Database({r: frozenset(ts) for r, ts in fixed.items()})
    assert evaluate(q, db).tuples == brute_evaluate(q, fixed)


def test_terms_and_atoms_render():
    a = Atom("R", (Var("x"), Const('a"b')))
    assert str(a) == 'R(x,"a\\"b")'
    assert sorted([Const("0"), Var("z")], key=lambda t: (isinstance(t, Const), str(t)))[0] == Var("z")
    assert list(itertools.islice(parse_query("ans() <- S(b), R(a).").atoms(), 1))[0].relation == "R"
