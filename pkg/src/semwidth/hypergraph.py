"""Hypergraphs of conjunctive queries and homomorphic images of them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .cq import ConjunctiveQuery, Var
from .errors import DegenerateHypergraphError, SemwidthError, UnsupportedMappingError


@dataclass(frozen=True)
class Hypergraph:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        edges = frozenset(frozenset(e) for e in self.edges)
        vertices = frozenset(self.vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertices", vertices)
        covered = set()
        for e in edges:
            if not e:
                raise SemwidthError("hyperedges must be nonempty")
            if not e <= vertices:
                raise SemwidthError(f"edge {sorted(e)} has vertices outside the vertex set")
            covered |= e
        if covered != vertices:
            raise SemwidthError(f"isolated vertices: {sorted(vertices - covered)}")

    @classmethod
    def from_edges(cls, edges):
        edges = [frozenset(e) for e in edges]
        return cls(frozenset().union(*edges), frozenset(edges))

    def sorted_vertices(self):
        return sorted(self.vertices)

    def sorted_edges(self):
        return sorted(self.edges, key=lambda e: (sorted(e), len(e)))

    def incident(self, v):
        return [e for e in self.sorted_edges() if v in e]

    def primal_adjacency(self):
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            for v in e:
                adj[v] |= e - {v}
        return adj

    def to_json(self):
        return {"vertices": self.sorted_vertices(), "edges": [sorted(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data):
        return cls(frozenset(data["vertices"]), frozenset(frozenset(e) for e in data["edges"]))


def edge_label(e) -> str:
    return "{" + ",".join(sorted(e)) + "}"


def hypergraph_of(q: ConjunctiveQuery) -> Hypergraph:
    """One edge per atom: its variable set.  Constants are not vertices."""
    edges = {frozenset(a.variables()) for a in q.body}
    edges.discard(frozenset())
    if not edges:
        raise DegenerateHypergraphError("query has no variables; its hypergraph is empty")
    return Hypergraph.from_edges(edges)


def image(f: Mapping[str, str], h: Hypergraph) -> Hypergraph:
    missing = h.vertices - set(f)
    if missing:
        raise SemwidthError(f"vertex map is not total; missing {sorted(missing)}")
    return Hypergraph(frozenset(f[v] for v in h.vertices),
                      frozenset(frozenset(f[v] for v in e) for e in h.edges))


def check_homomorphism(f: Mapping[str, str], g: Hypergraph, h: Hypergraph) -> bool:
    if not g.vertices <= set(f):
        return False
    return all(frozenset(f[v] for v in e) in h.edges for e in g.edges)


def vertex_map_of(mapping: Mapping) -> dict:
    """Restrict a CQ homomorphism (variable -> term) to a vertex map.

    A variable sent to a constant has no vertex image; that case is refused.
    """
    out = {}
    for x, t in mapping.items():
        if not isinstance(t, Var):
            raise UnsupportedMappingError(
                f"variable {x} is mapped to constant {t}; no induced hypergraph homomorphism")
        out[x] = t.name
    return out
