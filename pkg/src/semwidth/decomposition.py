"""Tree decompositions, f-widths, exact ghw/fhw and the restriction to a core.

Exact widths are computed by dynamic programming over elimination orderings:
for a monotone bag measure every tree decomposition can be refined to one
coming from an elimination ordering without increasing any bag, so the
optimum over orderings equals the optimum over all decompositions.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from . import kernels
from .cover import (
    CoverCertificatePair,
    IntegralCover,
    make_fis,
    rational_str,
    rho_integral,
    rho_star,
    verify_cover,
    verify_pair,
)
from .errors import CapExceededError, DegenerateHypergraphError, InvalidDecompositionError, WidthFunctionError
from .functions import (
    RHO,
    RHO_FRACTIONAL,
    RHO_INTEGRAL,
    RHO_STAR,
    TABLE,
    VALIDATION_CAP,
    WidthFunction,
    concave_of_modular,
    is_monotone,
    modular_from_fis,
    rho_function,
    scale,
    tabulate,
    validate_function,
)
from .hypergraph import Hypergraph

DEFAULT_CAP = 12


@dataclass(frozen=True)
class TreeDecomposition:
    nodes: tuple
    tree_edges: frozenset          # pairs (a, b) with a < b
    bags: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        object.__setattr__(self, "tree_edges",
                           frozenset((min(a, b), max(a, b)) for a, b in self.tree_edges))
        object.__setattr__(self, "bags", {u: frozenset(self.bags.get(u, ())) for u in self.nodes})

    def neighbours(self):
        nb = {u: [] for u in self.nodes}
        for a, b in sorted(self.tree_edges):
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def to_json(self):
        return {"nodes": list(self.nodes),
                "tree_edges": [list(e) for e in sorted(self.tree_edges)],
                "bags": {str(u): sorted(self.bags[u]) for u in self.nodes}}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["nodes"]), frozenset(tuple(e) for e in data["tree_edges"]),
                   {int(u): frozenset(b) for u, b in data["bags"].items()})


def trivial_decomposition(h: Hypergraph) -> TreeDecomposition:
    return TreeDecomposition((0,), frozenset(), {0: h.vertices})


def _is_tree(td: TreeDecomposition) -> bool:
    if not td.nodes or len(set(td.nodes)) != len(td.nodes):
        return False
    nodes = set(td.nodes)
    if any(a not in nodes or b not in nodes or a == b for a, b in td.tree_edges):
        return False
    if len(td.tree_edges) != len(nodes) - 1:
        return False
    nb = td.neighbours()
    seen = {td.nodes[0]}
    todo = [td.nodes[0]]
    while todo:
        for w in nb[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen == nodes


def is_valid_decomposition(h: Hypergraph, td: TreeDecomposition) -> bool:
    if not _is_tree(td):
        return False
    if any(not bag <= h.vertices for bag in td.bags.values()):
        return False
    bags = list(td.bags.values())
    if not all(any(e <= bag for bag in bags) for e in h.edges):
        return False
    nb = td.neighbours()
    for v in h.vertices:
        holding = {u for u in td.nodes if v in td.bags[u]}
        if not holding:
            return False
        start = next(iter(holding))
        seen = {start}
        todo = [start]
        while todo:
            for w in nb[todo.pop()]:
                if w in holding and w not in seen:
                    seen.add(w)
                    todo.append(w)
        if seen != holding:
            return False
    return True


@dataclass(frozen=True)
class WidthReport:
    value: Fraction
    decomposition: TreeDecomposition
    certificates: Mapping          # node -> CoverCertificatePair | IntegralCover | Fraction
    measure: str

    def to_json(self):
        certs = {}
        for u, c in self.certificates.items():
            certs[str(u)] = c.to_json() if hasattr(c, "to_json") else {"value": rational_str(c)}
        return {"measure": self.measure, "value": rational_str(self.value),
                "decomposition": self.decomposition.to_json(), "certificates": certs}


def _bag_certificate(h: Hypergraph, b: WidthFunction, bag):
    if b.kind == RHO_FRACTIONAL:
        return rho_star(h, bag)
    if b.kind == RHO_INTEGRAL:
        return rho_integral(h, bag)
    return b(bag)


def _certificate_value(c) -> Fraction:
    return c.value if isinstance(c, (CoverCertificatePair, IntegralCover)) else Fraction(c)


def f_width(h: Hypergraph, td: TreeDecomposition, b: WidthFunction) -> WidthReport:
    """Largest bag measure of ``td``, with a certificate for each bag."""
    if not is_valid_decomposition(h, td):
        raise InvalidDecompositionError("not a tree decomposition of the hypergraph")
    if b.kind != TABLE and b.hypergraph is not None and b.hypergraph != h:
        raise WidthFunctionError("cover measure is bound to a different hypergraph")
    certs = {u: _bag_certificate(h, b, td.bags[u]) for u in td.nodes}
    value = max(_certificate_value(c) for c in certs.values())
    return WidthReport(value, td, certs, b.kind)


def verify_width_report(h: Hypergraph, report: WidthReport, b: Optional[WidthFunction] = None) -> bool:
    """Re-check the decomposition and every per-bag certificate from scratch."""
    td = report.decomposition
    if not is_valid_decomposition(h, td) or set(report.certificates) != set(td.nodes):
        return False
    values = []
    for u in td.nodes:
        c = report.certificates[u]
        bag = td.bags[u]
        if isinstance(c, CoverCertificatePair):
            if c.primal.target != bag or not verify_pair(h, c):
                return False
        elif isinstance(c, IntegralCover):
            if c.target != bag or not all(e in h.edges for e in c.edges):
                return False
            if not verify_cover(h, bag, c.as_fractional()):
                return False
            # optimality of the count: no smaller edge set covers the bag
            if rho_integral(h, bag).count != c.count:
                return False
        elif b is not None and b(bag) != c:
            return False
        values.append(_certificate_value(c))
    return max(values) == report.value


# ---------------------------------------------------------------------------
# exact search


def _check_size(h: Hypergraph, cap: int):
    if not h.vertices:
        raise DegenerateHypergraphError("hypergraph has no vertices")
    if len(h.vertices) > cap:
        raise CapExceededError(f"{len(h.vertices)} vertices exceed the cap of {cap}")


def _contract(nodes, edges, bags) -> TreeDecomposition:
    """Merge away every node whose bag lies inside a neighbour's bag."""
    nodes = sorted(nodes)
    edges = {(min(a, b), max(a, b)) for a, b in edges}
    while True:
        hit = next(((a, b) for a, b in sorted(edges) if bags[a] <= bags[b] or bags[b] <= bags[a]), None)
        if hit is None:
            break
        a, b = hit
        gone, stay = (a, b) if bags[a] <= bags[b] else (b, a)
        edges = {(min(stay if x == gone else x, stay if y == gone else y),
                  max(stay if x == gone else x, stay if y == gone else y))
                 for x, y in edges if {x, y} != {a, b}}
        nodes.remove(gone)
    ids = {u: i for i, u in enumerate(nodes)}
    return TreeDecomposition(tuple(ids.values()), frozenset((ids[a], ids[b]) for a, b in edges),
                             {ids[u]: bags[u] for u in nodes})


def _elimination_decomposition(verts, bags, order) -> TreeDecomposition:
    n = len(verts)
    pos = {v: i for i, v in enumerate(order)}
    prefix = 0
    node_bags = {}
    for i, v in enumerate(order):
        node_bags[i] = frozenset(verts[w] for w in range(n) if bags[prefix * n + v] >> w & 1)
        prefix |= 1 << v
    edges = set()
    for i, v in enumerate(order[:-1]):
        later = [pos[w] for w in range(n) if w != v and bags_mask(bags, order, i, n) >> w & 1]
        edges.add((i, min(later) if later else n - 1))
    return _contract(range(n), edges, node_bags)


def bags_mask(bags, order, i, n):
    prefix = sum(1 << w for w in order[:i])
    return bags[prefix * n + order[i]]


def _min_degree_order(n, adj):
    adj = list(adj)
    left = (1 << n) - 1
    order = []
    while left:
        v = min((w for w in range(n) if left >> w & 1), key=lambda w: (bin(adj[w] & left).count("1"), w))
        nb = adj[v] & left & ~(1 << v)
        for w in range(n):
            if nb >> w & 1:
                adj[w] |= nb & ~(1 << w)
        left &= ~(1 << v)
        order.append(v)
    return order


def _cover_lower_bound(h: Hypergraph, bag) -> Fraction:
    """``|B| / max |e ∩ B|``: no cover of B can weigh less."""
    biggest = max(len(e & bag) for e in h.edges)
    return Fraction(len(bag), biggest)


def _exact_width(h: Hypergraph, b: WidthFunction, cap: int) -> WidthReport:
    _check_size(h, cap)
    verts = h.sorted_vertices()
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * n
    for e in h.edges:
        m = sum(1 << index[v] for v in e)
        for v in e:
            adj[index[v]] |= m & ~(1 << index[v])
    bags = kernels.elimination_bags(n, adj)
    names = lambda m: frozenset(verts[w] for w in range(n) if m >> w & 1)

    # bags that cannot beat a greedy ordering get a sentinel rank above all others
    greedy = _min_degree_order(n, adj)
    upper = max(b(names(bags_mask(bags, greedy, i, n))) for i in range(n))
    value_of = {}
    for m in sorted({m for m in bags if m >= 0}):
        bag = names(m)
        if b.kind != TABLE and _cover_lower_bound(h, bag) > upper:
            value_of[m] = None
        else:
            value_of[m] = b(bag)
    levels = sorted({val for val in value_of.values() if val is not None})
    level = {val: i for i, val in enumerate(levels)}
    rank = [-1] * (1 << n)
    for m, val in value_of.items():
        rank[m] = len(levels) if val is None else level[val]
    best, choice = kernels.elimination_dp(n, bags, rank)
    order = []
    s = (1 << n) - 1
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    td = _elimination_decomposition(verts, bags, order)
    report = f_width(h, td, b)
    if report.value != levels[best[(1 << n) - 1]]:
        raise RuntimeError("decomposition does not reproduce the optimal width")
    return report


def ghw_exact(h: Hypergraph, cap: int = DEFAULT_CAP) -> WidthReport:
    return _exact_width(h, rho_function(h, integral=True), cap)


def fhw_exact(h: Hypergraph, cap: int = DEFAULT_CAP) -> WidthReport:
    return _exact_width(h, rho_function(h), cap)


def b_width_exact(h: Hypergraph, b: WidthFunction, cap: int = DEFAULT_CAP) -> WidthReport:
    """Minimum b-width over all tree decompositions of ``h``; ``b`` must be monotone."""
    b = b.bound_to(h)
    if b.kind == TABLE:
        if not h.vertices <= set(b.domain):
            raise WidthFunctionError("function domain does not contain every vertex")
        if not is_monotone(b):
            raise WidthFunctionError("b is not monotone")
    return _exact_width(h, b, cap)


# ---------------------------------------------------------------------------
# restriction to a core


def _rooted_parents(td: TreeDecomposition):
    root = td.nodes[0]
    nb = td.neighbours()
    parent = {root: None}
    order = [root]
    todo = deque([root])
    while todo:
        u = todo.popleft()
        for w in nb[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                todo.append(w)
    return parent, order


def restrict_to_core(td: TreeDecomposition, core_vertices) -> TreeDecomposition:
    """Intersect every bag with ``core_vertices`` and drop the emptied nodes.

    The tree is rooted at its lowest node id.  A surviving node whose parent
    was dropped is re-hung below its nearest surviving ancestor.  Survivors
    with no surviving ancestor (only when the root empties) go under the
    first of them in breadth-first order, which becomes the new root.
    """
    core_vertices = frozenset(core_vertices)
    covered = frozenset().union(*td.bags.values())
    if not core_vertices <= covered:
        raise InvalidDecompositionError(
            f"core vertices {sorted(core_vertices - covered)} appear in no bag")
    parent, order = _rooted_parents(td)
    bags = {u: td.bags[u] & core_vertices for u in td.nodes}
    keep = [u for u in order if bags[u]]
    new_parent = {}
    orphans = []
    for u in keep:
        p = parent[u]
        while p is not None and not bags[p]:
            p = parent[p]
        if p is None:
            orphans.append(u)
        else:
            new_parent[u] = p
    if orphans:
        root = orphans[0]
        for u in orphans[1:]:
            new_parent[u] = root
    return TreeDecomposition(tuple(keep), frozenset(new_parent.items()), {u: bags[u] for u in keep})


# ---------------------------------------------------------------------------
# sampled lower bounds for adaptive / submodular width


@dataclass(frozen=True)
class SampledBound:
    value: Fraction
    report: WidthReport           # b-width report of the best sampled function
    function: WidthFunction
    certified: int                # number of functions that passed validation
    family: str


def _random_weights(rng, verts):
    return {v: Fraction(rng.randint(0, 4)) for v in verts}


def _normalise(b: WidthFunction, h: Hypergraph):
    top = max(b(e) for e in h.edges)
    if top == 0:
        return None
    return scale(b, 1 / top)


def sample_functions(h: Hypergraph, family: str, samples: int, seed: int):
    """Candidate functions for ``family``; the submodular list extends the modular one."""
    verts = h.sorted_vertices()
    rng = random.Random(seed)
    out = [modular_from_fis(rho_star(h).dual, verts, h)]
    for _ in range(max(samples - 1, 0)):
        b = _normalise(modular_from_fis(make_fis(_random_weights(rng, verts)), verts), h)
        out.append(b if b is not None else modular_from_fis(make_fis({}), verts))
    if family == "submodular":
        rng = random.Random(2 * seed + 1)
        out.append(tabulate(RHO_STAR, h))
        for _ in range(samples):
            w = _random_weights(rng, verts)
            b = _normalise(concave_of_modular(w, rng.randint(1, 4), verts), h)
            if b is not None:
                out.append(b)
    elif family != "modular":
        raise ValueError(f"unknown family {family!r}")
    return out


def sampled_lower_bound(h: Hypergraph, family: str, samples: int = 8, seed: int = 0,
                        cap: int = VALIDATION_CAP) -> SampledBound:
    """Best b-width over sampled certified functions: a lower bound on adw or subw."""
    _check_size(h, min(cap, VALIDATION_CAP))
    best = None
    certified = 0
    for b in sample_functions(h, family, samples, seed):
        if not validate_function(b, h).certified(family):
            continue
        certified += 1
        report = b_width_exact(h, b, cap)
        if best is None or report.value > best[0].value:
            best = (report, b)
    return SampledBound(best[0].value, best[0], best[1], certified, family)


def sampled_lower_bound_width(h: Hypergraph, family: str, samples: int = 8, seed: int = 0,
                              cap: int = VALIDATION_CAP) -> Fraction:
    return sampled_lower_bound(h, family, samples, seed, cap).value


__all__ = [
    "RHO", "RHO_STAR", "TreeDecomposition", "WidthReport", "SampledBound",
    "trivial_decomposition", "is_valid_decomposition", "f_width", "verify_width_report",
    "ghw_exact", "fhw_exact", "b_width_exact", "restrict_to_core",
    "sample_functions", "sampled_lower_bound", "sampled_lower_bound_width",
]
