"""Query generators: parity grids, random queries and equivalent inflations."""
from __future__ import annotations

import random

from .cq import Atom, ConjunctiveQuery, Var
from .errors import CapExceededError

GRID_CAP = 64


def _grid_var(r, c, rows, cols):
    if rows <= 10 and cols <= 10:
        return f"x{r}{c}"
    return f"x{r}_{c}"


def gen_parity_grid(rows: int, cols: int) -> ConjunctiveQuery:
    """Boolean grid query over one binary relation.

    Each grid edge becomes ``R(u, v)`` with ``u`` the endpoint whose
    coordinates sum to an even number, so every atom maps onto any single atom.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    if rows * cols > GRID_CAP:
        raise CapExceededError(f"grid has {rows * cols} cells, cap is {GRID_CAP}")
    if rows * cols == 1:
        raise ValueError("a 1x1 grid has no edges")
    atoms = set()
    for r in range(rows):
        for c in range(cols):
            for r2, c2 in ((r + 1, c), (r, c + 1)):
                if r2 < rows and c2 < cols:
                    a, b = (r, c), (r2, c2)
                    if (r + c) % 2:
                        a, b = b, a
                    atoms.add(Atom("R", (Var(_grid_var(*a, rows, cols)), Var(_grid_var(*b, rows, cols)))))
    return ConjunctiveQuery((), frozenset(atoms))


def gen_random_cq(seed: int, n_vars: int, n_atoms: int, max_arity: int = 2,
                  n_relations: int = 2, head_size: int = 0) -> ConjunctiveQuery:
    """Deterministic random query; the head is drawn from the variables used."""
    if min(n_vars, n_atoms, max_arity, n_relations) < 1:
        raise ValueError("generator parameters must be positive")
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(n_vars)]
    arity = {f"R{i}": rng.randint(1, max_arity) for i in range(n_relations)}
    rels = sorted(arity)
    atoms = []
    for _ in range(n_atoms):
        rel = rng.choice(rels)
        atoms.append(Atom(rel, tuple(Var(rng.choice(names)) for _ in range(arity[rel]))))
    used = sorted({v for a in atoms for v in a.variables()})
    head = tuple(rng.sample(used, min(head_size, len(used))))
    return ConjunctiveQuery(head, frozenset(atoms))


def gen_inflation(q: ConjunctiveQuery, steps: int, seed: int) -> ConjunctiveQuery:
    """Add ``steps`` atoms while staying equivalent to ``q``.

    Each new atom copies an atom of ``q`` and replaces some of its variables
    by copies ``x__k`` of them.  Mapping every copy back to its original is a
    homomorphism onto ``q``, and ``q`` is contained in the result, so the two
    are equivalent.
    """
    rng = random.Random(seed)
    base = q.atoms()
    copies = {x: [] for x in sorted(q.variables)}
    body = set(q.body)
    fresh = 0
    taken = set(q.variables)
    for _ in range(steps):
        for _attempt in range(8):
            src = rng.choice(base)
            args = []
            for t in src.args:
                if not isinstance(t, Var):
                    args.append(t)
                    continue
                pool = [t.name] + copies[t.name]
                pick = rng.randrange(len(pool) + 1)
                if pick == len(pool):
                    while True:
                        name = f"{t.name}__{fresh}"
                        fresh += 1
                        if name not in taken:
                            break
                    taken.add(name)
                    copies[t.name].append(name)
                    args.append(Var(name))
                else:
                    args.append(Var(pool[pick]))
            atom = Atom(src.relation, tuple(args))
            if atom not in body:
                break
        body.add(atom)
    return ConjunctiveQuery(q.head, frozenset(body))


def origin_map(q: ConjunctiveQuery, inflated: ConjunctiveQuery) -> dict:
    """The retraction ``x__k -> x`` certifying an inflation."""
    out = {}
    for x in inflated.variables:
        base = x
        while base not in q.variables and "__" in base:
            base = base.rsplit("__", 1)[0]
        out[x] = Var(base)
    return out
