"""Homomorphisms between conjunctive queries, equivalence and cores."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import kernels
from .cq import Atom, ConjunctiveQuery, Const, Var, term_key
from .errors import NotAHomomorphismError, NotARenamingError


def _search(src_atoms, tgt_atoms, head, injective=False) -> Optional[dict]:
    """Map the variables of ``src_atoms`` so every atom lands in ``tgt_atoms``.

    Head variables are pinned to themselves, constants to themselves.
    Returns ``{var: Term}`` or None.
    """
    src_atoms = sorted(set(src_atoms), key=Atom.sort_key)
    tgt_atoms = sorted(set(tgt_atoms), key=Atom.sort_key)
    values = sorted({t for a in tgt_atoms for t in a.args}, key=term_key)
    value_id = {t: i for i, t in enumerate(values)}
    src_vars = sorted({v for a in src_atoms for v in a.variables()})
    var_id = {x: i for i, x in enumerate(src_vars)}

    by_signature = {}
    for a in tgt_atoms:
        by_signature.setdefault((a.relation, len(a.args)), []).append(
            tuple(value_id[t] for t in a.args))

    domains = [None] * len(src_vars)
    for x in head:
        if x in var_id:
            vid = value_id.get(Var(x))
            if vid is None:
                return None
            domains[var_id[x]] = {vid}

    atom_vars, cands = [], []
    for a in src_atoms:
        rows = by_signature.get((a.relation, len(a.args)), [])
        first_pos = {}
        keep = []
        for row in rows:
            ok = True
            for p, t in enumerate(a.args):
                if isinstance(t, Const):
                    if value_id.get(t) != row[p]:
                        ok = False
                        break
                else:
                    q = first_pos.setdefault(t.name, p)
                    if row[q] != row[p]:
                        ok = False
                        break
            if ok:
                keep.append(row)
        if not keep:
            return None
        positions = [p for p, t in enumerate(a.args) if isinstance(t, Var)]
        if not positions:
            continue
        vs = tuple(var_id[a.args[p].name] for p in positions)
        tuples = sorted({tuple(row[p] for p in positions) for row in keep})
        atom_vars.append(vs)
        cands.append(tuples)
        for k, v in enumerate(vs):
            seen = {t[k] for t in tuples}
            domains[v] = seen if domains[v] is None else domains[v] & seen

    if not src_vars:
        return {}
    assignment = kernels.hom_search(len(src_vars), len(values),
                                    [sorted(d) for d in domains], atom_vars, cands, injective)
    if assignment is None:
        return None
    return {x: values[assignment[i]] for i, x in enumerate(src_vars)}


def apply(h: Mapping, atom: Atom) -> Atom:
    return Atom(atom.relation, tuple(h[t.name] if isinstance(t, Var) else t for t in atom.args))


def find_homomorphism(q1: ConjunctiveQuery, q2: ConjunctiveQuery) -> Optional[dict]:
    """A homomorphism ``q1 -> q2`` as ``{variable: Term}``, or None.

    Heads must be identical lists; otherwise head fixing cannot hold and the
    answer is None.
    """
    if q1.head != q2.head:
        return None
    return _search(q1.body, q2.body, q1.head)


def is_homomorphism(h: Mapping, q1: ConjunctiveQuery, q2: ConjunctiveQuery) -> bool:
    """Independent checker: head fixing and atom preservation, atom by atom."""
    if q1.head != q2.head or set(h) != set(q1.variables):
        return False
    if any(h[x] != Var(x) for x in q1.head):
        return False
    return all(apply(h, a) in q2.body for a in q1.body)


def is_equivalent(q1: ConjunctiveQuery, q2: ConjunctiveQuery) -> bool:
    return find_homomorphism(q1, q2) is not None and find_homomorphism(q2, q1) is not None


def are_isomorphic(q1: ConjunctiveQuery, q2: ConjunctiveQuery) -> bool:
    if q1.head != q2.head or len(q1.body) != len(q2.body) or len(q1.variables) != len(q2.variables):
        return False
    return (_search(q1.body, q2.body, q1.head, injective=True) is not None
            and _search(q2.body, q1.body, q2.head, injective=True) is not None)


@dataclass(frozen=True)
class CoreResult:
    core: ConjunctiveQuery
    retraction: dict       # q -> core, identity on vars(core)
    witness_back: dict     # core -> q, the inclusion


def _shrinking_endomorphism(body, head):
    # try to drop the last atom first, so canonically earlier atoms survive
    atoms = sorted(body, key=Atom.sort_key)
    for a in reversed(atoms):
        h = _search(atoms, [b for b in atoms if b != a], head)
        if h is not None:
            return h
    return None


def compute_core(q: ConjunctiveQuery) -> CoreResult:
    """Delete atoms via image-shrinking endomorphisms until none exists."""
    body = frozenset(q.body)
    f = identity(sorted(q.variables))
    while True:
        h = _shrinking_endomorphism(body, q.head)
        if h is None:
            break
        body = frozenset(apply(h, a) for a in body)
        f = {x: h[t.name] if isinstance(t, Var) else t for x, t in f.items()}
    core = ConjunctiveQuery(q.head, body)
    retraction = normalize_retraction(f, q, core)
    return CoreResult(core, retraction, identity(sorted(core.variables)))


def normalize_retraction(f: Mapping, q: ConjunctiveQuery, core: ConjunctiveQuery) -> dict:
    """Turn ``f: q -> core`` into ``f*`` with ``f*(v) = v`` on ``vars(core)``.

    ``f`` restricted to the core must be a variable renaming; ``f*`` composes
    ``f`` with the inverse renaming.
    """
    cvars = sorted(core.variables)
    restricted = {x: f[x] for x in cvars}
    if any(not isinstance(t, Var) for t in restricted.values()):
        raise NotARenamingError("f sends a core variable to a constant")
    names = [t.name for t in restricted.values()]
    if len(set(names)) != len(names) or set(names) != set(cvars):
        raise NotARenamingError("f is not injective on the core variables")
    inverse = {t.name: Var(x) for x, t in restricted.items()}
    out = {x: inverse[t.name] if isinstance(t, Var) else t for x, t in f.items()}
    if not is_homomorphism(out, q, core):
        raise NotAHomomorphismError("normalized map is not a homomorphism q -> core")
    return out


def is_core(q: ConjunctiveQuery) -> bool:
    return _shrinking_endomorphism(q.body, q.head) is None


def rename(q: ConjunctiveQuery, renaming: Mapping[str, str]) -> ConjunctiveQuery:
    h = {x: Var(renaming.get(x, x)) for x in q.variables}
    return ConjunctiveQuery(tuple(renaming.get(x, x) for x in q.head),
                            frozenset(apply(h, a) for a in q.body))


def mapping_to_json(h: Mapping) -> dict:
    return {"mapping": {x: ({"var": t.name} if isinstance(t, Var) else {"const": t.value})
                        for x, t in sorted(h.items())}}


def mapping_from_json(data) -> dict:
    out = {}
    for x, t in data["mapping"].items():
        out[x] = Var(t["var"]) if "var" in t else Const(t["const"])
    return out


def image_query(h: Mapping, q: ConjunctiveQuery) -> ConjunctiveQuery:
    return ConjunctiveQuery(q.head, frozenset(apply(h, a) for a in q.body))


def compose(outer: Mapping, inner: Mapping) -> dict:
    """``outer ∘ inner`` on term-valued maps."""
    return {x: outer[t.name] if isinstance(t, Var) else t for x, t in inner.items()}


def identity(variables: Iterable[str]) -> dict:
    return {x: Var(x) for x in variables}
