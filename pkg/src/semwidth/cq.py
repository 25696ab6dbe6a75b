"""Conjunctive queries: data model, concrete syntax and a brute-force evaluator.

Query text looks like::

    ans(x, y) <- R(x, z), S(z, y, "c"), T(y, 42).

Variables are lower-case identifiers, relation names start with an upper-case
letter, constants are double-quoted strings or integer literals.  All
constants are untyped strings internally, so ``42`` and ``"42"`` are the same
constant.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ArityError, QuerySyntaxError, SafetyError, SemwidthError


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Const:
    value: str

    def __str__(self):
        escaped = self.value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'


Term = Var | Const


def term_key(t: Term):
    # variables sort before constants
    return (0, t.name) if isinstance(t, Var) else (1, t.value)


@dataclass(frozen=True)
class Atom:
    relation: str
    args: tuple

    def variables(self):
        return {t.name for t in self.args if isinstance(t, Var)}

    def sort_key(self):
        return (self.relation, len(self.args), tuple(term_key(t) for t in self.args))

    def __str__(self):
        return f"{self.relation}({','.join(str(t) for t in self.args)})"


@dataclass(frozen=True)
class ConjunctiveQuery:
    """``ans(head) <- body``; the body is a set, so duplicate atoms collapse."""

    head: tuple
    body: frozenset

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "body", frozenset(self.body))
        if not self.body:
            raise SemwidthError("query body is empty")
        check_arities(self.body)
        missing = [x for x in self.head if x not in self.variables]
        if missing:
            raise SafetyError(f"head variable(s) {', '.join(missing)} do not occur in the body")

    @property
    def variables(self) -> frozenset:
        out = set()
        for a in self.body:
            out |= a.variables()
        return frozenset(out)

    @property
    def constants(self) -> frozenset:
        return frozenset(t.value for a in self.body for t in a.args if isinstance(t, Const))

    def atoms(self) -> list:
        """Body atoms in canonical order."""
        return sorted(self.body, key=Atom.sort_key)

    def is_boolean(self):
        return not self.head

    def __str__(self):
        return render_query(self)


def check_arities(atoms: Iterable[Atom]):
    seen = {}
    for a in atoms:
        k = seen.setdefault(a.relation, len(a.args))
        if k != len(a.args):
            raise ArityError(f"relation {a.relation} used with arities {k} and {len(a.args)}")
    return seen


def make_query(head: Sequence[str], atoms: Iterable[tuple]) -> ConjunctiveQuery:
    """Build a query from ``(relation, [arg, ...])`` pairs.

    Plain string arguments are variables; wrap constants in :class:`Const`.
    """
    body = []
    for rel, args in atoms:
        body.append(Atom(rel, tuple(a if isinstance(a, (Var, Const)) else Var(a) for a in args)))
    return ConjunctiveQuery(tuple(head), frozenset(body))


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow><-)
  | (?P<var>[a-z][A-Za-z0-9_]*)
  | (?P<rel>[A-Z][A-Za-z0-9_]*)
  | (?P<int>-?[0-9]+)
  | (?P<str>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>[(),.])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            yield kind, value, line, col
        nl = value.count("\n")
        if nl:
            line += nl
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    col = pos - line_start + 1
    yield "eof", "", line, col


class _Parser:
    def __init__(self, text):
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None, what=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            expected = what or repr(value or kind)
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise QuerySyntaxError(f"expected {expected}, found {found}", tok[2], tok[3])
        self.i += 1
        return tok

    def query(self):
        tok = self.take("var", what="'ans'")
        if tok[1] != "ans":
            raise QuerySyntaxError(f"head must be named 'ans', found {tok[1]!r}", tok[2], tok[3])
        self.take("punct", "(")
        head = []
        if self.peek()[:2] != ("punct", ")"):
            head.append(self.take("var", what="head variable")[1])
            while self.peek()[:2] == ("punct", ","):
                self.i += 1
                head.append(self.take("var", what="head variable")[1])
        self.take("punct", ")")
        self.take("arrow", what="'<-'")
        atoms = [self.atom()]
        while self.peek()[:2] == ("punct", ","):
            self.i += 1
            atoms.append(self.atom())
        self.take("punct", ".")
        self.take("eof", what="end of input")
        return head, atoms

    def atom(self):
        rel = self.take("rel", what="relation name")[1]
        self.take("punct", "(")
        args = []
        if self.peek()[:2] != ("punct", ")"):
            args.append(self.term())
            while self.peek()[:2] == ("punct", ","):
                self.i += 1
                args.append(self.term())
        self.take("punct", ")")
        return Atom(rel, tuple(args))

    def term(self):
        kind, value, line, col = self.peek()
        self.i += 1
        if kind == "var":
            return Var(value)
        if kind == "int":
            return Const(value)
        if kind == "str":
            return Const(re.sub(r"\\(.)", r"\1", value[1:-1]))
        self.i -= 1
        found = "end of input" if kind == "eof" else repr(value)
        raise QuerySyntaxError(f"expected a term, found {found}", line, col)


def parse_query(text: str) -> ConjunctiveQuery:
    head, atoms = _Parser(text).query()
    return ConjunctiveQuery(tuple(head), frozenset(atoms))


def render_query(q: ConjunctiveQuery) -> str:
    body = ", ".join(str(a) for a in q.atoms())
    return f"ans({','.join(q.head)}) <- {body}."


# ---------------------------------------------------------------------------
# databases and evaluation


@dataclass(frozen=True)
class Database:
    relations: Mapping[str, frozenset]

    def __post_init__(self):
        rels = {}
        for name, tuples in self.relations.items():
            ts = frozenset(tuple(str(v) for v in t) for t in tuples)
            if len({len(t) for t in ts}) > 1:
                raise ArityError(f"relation {name} has tuples of different arity")
            rels[name] = ts
        object.__setattr__(self, "relations", rels)

    @property
    def universe(self) -> frozenset:
        return frozenset(v for ts in self.relations.values() for t in ts for v in t)

    def arity(self, name):
        ts = self.relations.get(name)
        if not ts:
            return None
        return len(next(iter(ts)))

    def to_json(self):
        return {"relations": {name: sorted(list(t) for t in self.relations[name])
                              for name in sorted(self.relations)}}

    @classmethod
    def from_json(cls, data):
        return cls({name: frozenset(tuple(t) for t in ts) for name, ts in data["relations"].items()})


@dataclass(frozen=True)
class AnswerRelation:
    attributes: tuple
    tuples: frozenset

    def to_json(self):
        return {"attributes": list(self.attributes), "tuples": sorted(list(t) for t in self.tuples)}


def frozen_name_prefix(q: ConjunctiveQuery) -> str:
    prefix = "?"
    while any(c.startswith(prefix) for c in q.constants):
        prefix += "?"
    return prefix


def canonical_database(q: ConjunctiveQuery) -> Database:
    """Freeze every variable ``x`` into the constant ``?x`` (more ``?`` if that clashes)."""
    prefix = frozen_name_prefix(q)
    rels = {}
    for a in q.body:
        row = tuple(prefix + t.name if isinstance(t, Var) else t.value for t in a.args)
        rels.setdefault(a.relation, set()).add(row)
    return Database({k: frozenset(v) for k, v in rels.items()})


def evaluate(q: ConjunctiveQuery, db: Database) -> AnswerRelation:
    """All head tuples over substitutions ``vars(q) -> universe`` that satisfy the body.

    Plain enumeration of substitutions in a fixed variable order; an atom is
    tested as soon as all its variables are bound.  Meant for tiny inputs only.
    """
    for a in q.body:
        k = db.arity(a.relation)
        if k is not None and k != len(a.args):
            raise ArityError(f"relation {a.relation} has arity {len(a.args)} in the query "
                             f"but {k} in the database")
    universe = sorted(db.universe)
    order = sorted(q.variables)
    pos = {v: i for i, v in enumerate(order)}
    # atoms become checkable once the last of their variables is bound
    ready = [[] for _ in range(len(order) + 1)]
    for a in q.atoms():
        last = max((pos[t.name] + 1 for t in a.args if isinstance(t, Var)), default=0)
        ready[last].append(a)

    sigma = {}
    answers = set()

    def holds(a):
        row = tuple(sigma[t.name] if isinstance(t, Var) else t.value for t in a.args)
        return row in db.relations.get(a.relation, ())

    def go(i):
        if not all(holds(a) for a in ready[i]):
            return
        if i == len(order):
            answers.add(tuple(sigma[x] for x in q.head))
            return
        for c in universe:
            sigma[order[i]] = c
            go(i + 1)
        sigma.pop(order[i], None)

    go(0)
    return AnswerRelation(tuple(q.head), frozenset(answers))


def query_to_json(q: ConjunctiveQuery):
    return {
        "query": render_query(q),
        "head": list(q.head),
        "atoms": [{"relation": a.relation,
                   "args": [{"var": t.name} if isinstance(t, Var) else {"const": t.value}
                            for t in a.args]}
                  for a in q.atoms()],
    }


def dumps(obj) -> str:
    """Deterministic JSON text used by every serializer in the package."""
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2)
