"""Fractional and integral edge covers with exact certificates.

``rho_star`` solves the vertex-packing LP (the dual of the cover LP) by exact
simplex and reads the optimal cover off the final tableau, so each answer
comes with a matching fractional independent set as its optimality proof.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

from .errors import InfeasibleCoverError, NotAHomomorphismError, SemwidthError
from .hypergraph import Hypergraph, check_homomorphism
from .simplex import maximize

ZERO = Fraction(0)
ONE = Fraction(1)


def rational_str(r) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(s) -> Fraction:
    return Fraction(str(s).strip())


def _edge_key(e):
    return (sorted(e), len(e))


@dataclass(frozen=True)
class FractionalCover:
    target: frozenset
    weights: Mapping      # frozenset edge -> Fraction
    total: Fraction

    def to_json(self):
        return {
            "target": sorted(self.target),
            "weights": [{"edge": sorted(e), "w": rational_str(w)}
                        for e, w in sorted(self.weights.items(), key=lambda kv: _edge_key(kv[0]))],
            "total": rational_str(self.total),
        }

    @classmethod
    def from_json(cls, data):
        weights = {frozenset(item["edge"]): parse_rational(item["w"]) for item in data["weights"]}
        total = sum(weights.values(), ZERO)
        if "total" in data and parse_rational(data["total"]) != total:
            raise SemwidthError("cover total does not match the sum of its weights")
        return cls(frozenset(data.get("target", ())), weights, total)


def make_cover(target, weights) -> FractionalCover:
    weights = {frozenset(e): Fraction(w) for e, w in weights.items()}
    return FractionalCover(frozenset(target), weights, sum(weights.values(), ZERO))


@dataclass(frozen=True)
class FractionalIndependentSet:
    weights: Mapping      # vertex -> Fraction
    total: Fraction

    def to_json(self):
        return {"weights": [{"vertex": v, "w": rational_str(w)} for v, w in sorted(self.weights.items())],
                "total": rational_str(self.total)}


def make_fis(weights) -> FractionalIndependentSet:
    weights = {v: Fraction(w) for v, w in weights.items()}
    return FractionalIndependentSet(weights, sum(weights.values(), ZERO))


@dataclass(frozen=True)
class CoverCertificatePair:
    primal: FractionalCover
    dual: FractionalIndependentSet

    @property
    def value(self) -> Fraction:
        return self.primal.total

    def to_json(self):
        return {"value": rational_str(self.value), "primal": self.primal.to_json(),
                "dual": self.dual.to_json()}


@dataclass(frozen=True)
class IntegralCover:
    target: frozenset
    edges: tuple          # chosen edges, canonical order

    @property
    def count(self) -> int:
        return len(self.edges)

    @property
    def value(self) -> Fraction:
        return Fraction(len(self.edges))

    def as_fractional(self) -> FractionalCover:
        return make_cover(self.target, {e: ONE for e in self.edges})

    def to_json(self):
        return {"target": sorted(self.target), "count": self.count,
                "edges": [sorted(e) for e in self.edges]}


def _target(h: Hypergraph, w) -> frozenset:
    w = h.vertices if w is None else frozenset(w)
    stray = w - h.vertices
    if stray:
        raise InfeasibleCoverError(f"vertices {sorted(stray)} lie in no edge")
    return w


def rho_star(h: Hypergraph, w=None) -> CoverCertificatePair:
    """Optimal fractional edge cover of ``w`` (default: all vertices) and its dual."""
    return _rho_star(h, _target(h, w))


@lru_cache(maxsize=65536)
def _rho_star(h: Hypergraph, w: frozenset) -> CoverCertificatePair:
    edges = h.sorted_edges()
    zero_fis = {v: ZERO for v in h.vertices}
    if not w:
        return CoverCertificatePair(FractionalCover(w, {e: ZERO for e in edges}, ZERO),
                                    FractionalIndependentSet(zero_fis, ZERO))
    cols = sorted(w)
    rows = [e for e in edges if e & w]
    # a single edge holding all of w is optimal: weight 1, dual puts 1 on any vertex
    for e in rows:
        if w <= e:
            weights = {g: (ONE if g == e else ZERO) for g in edges}
            fis = dict(zero_fis)
            fis[cols[0]] = ONE
            return CoverCertificatePair(FractionalCover(w, weights, ONE),
                                        FractionalIndependentSet(fis, ONE))
    # edges whose trace on w is inside another edge's trace give implied constraints
    traces = {}
    for e in rows:
        traces.setdefault(e & w, e)
    kept = [t for t in traces if not any(t < u for u in traces)]
    kept.sort(key=_edge_key)
    A = [[1 if v in t else 0 for v in cols] for t in kept]
    sol = maximize(A, [1] * len(kept), [1] * len(cols))
    cover = {e: ZERO for e in edges}
    for t, x in zip(kept, sol.dual):
        cover[traces[t]] = x
    fis = dict(zero_fis)
    for v, y in zip(cols, sol.primal):
        fis[v] = y
    return CoverCertificatePair(FractionalCover(w, cover, sum(cover.values(), ZERO)),
                                FractionalIndependentSet(fis, sum(fis.values(), ZERO)))


def verify_cover(h: Hypergraph, w, x: FractionalCover) -> bool:
    """Exact feasibility of ``x`` for the cover constraints of ``w``."""
    for e in x.weights:
        if e not in h.edges:
            raise SemwidthError(f"weight on non-edge {sorted(e)}")
    if any(val < 0 for val in x.weights.values()):
        return False
    for v in w:
        if sum((val for e, val in x.weights.items() if v in e), ZERO) < 1:
            return False
    return True


def is_edge_dominated(h: Hypergraph, fis: FractionalIndependentSet) -> bool:
    if any(val < 0 for val in fis.weights.values()):
        return False
    return all(sum((fis.weights.get(v, ZERO) for v in e), ZERO) <= 1 for e in h.edges)


def verify_pair(h: Hypergraph, pair: CoverCertificatePair) -> bool:
    """Primal feasible, dual feasible, equal objective: an optimality proof."""
    p, d = pair.primal, pair.dual
    if p.total != sum(p.weights.values(), ZERO) or d.total != sum(d.weights.values(), ZERO):
        return False
    if any(d.weights.get(v, ZERO) != 0 for v in h.vertices - p.target):
        return False
    return verify_cover(h, p.target, p) and is_edge_dominated(h, d) and p.total == d.total


def rho_integral(h: Hypergraph, w=None) -> IntegralCover:
    """Minimum number of edges covering ``w``, by branch and bound."""
    return _rho_integral(h, _target(h, w))


@lru_cache(maxsize=65536)
def _rho_integral(h: Hypergraph, w: frozenset) -> IntegralCover:
    if not w:
        return IntegralCover(w, ())
    verts = sorted(w)
    bit = {v: 1 << i for i, v in enumerate(verts)}
    full = (1 << len(verts)) - 1
    masks = []
    seen = set()
    for e in h.sorted_edges():
        m = sum(bit[v] for v in e if v in bit)
        if m and m not in seen:
            seen.add(m)
            masks.append((m, e))
    for m, e in masks:
        if m == full:
            return IntegralCover(w, (e,))

    # greedy start gives the initial bound
    covered, greedy = 0, []
    while covered != full:
        m, e = max(masks, key=lambda me: bin(me[0] & ~covered).count("1"))
        greedy.append((m, e))
        covered |= m
    best = [list(greedy)]
    biggest = max(bin(m).count("1") for m, _ in masks)

    def dfs(covered, chosen):
        if covered == full:
            if len(chosen) < len(best[0]):
                best[0] = list(chosen)
            return
        left = bin(full & ~covered).count("1")
        if len(chosen) + -(-left // biggest) >= len(best[0]):
            return
        low = (full & ~covered) & -(full & ~covered)
        options = [me for me in masks if me[0] & low]
        options.sort(key=lambda me: -bin(me[0] & ~covered).count("1"))
        for me in options:
            chosen.append(me)
            dfs(covered | me[0], chosen)
            chosen.pop()

    dfs(0, [])
    edges = tuple(sorted((e for _, e in best[0]), key=_edge_key))
    return IntegralCover(w, edges)


def transfer_cover(f: Mapping[str, str], g: Hypergraph, h: Hypergraph,
                   x: FractionalCover, target: Optional[frozenset] = None) -> FractionalCover:
    """Push a cover of ``g`` through a homomorphism ``f: g -> h``.

    Each edge of ``h`` receives the summed weight of its preimage edges, so
    the total is unchanged.  The result covers ``f(target)``; by default
    ``target`` is ``x.target``.
    """
    if not check_homomorphism(f, g, h):
        raise NotAHomomorphismError("vertex map is not a hypergraph homomorphism")
    target = x.target if target is None else frozenset(target)
    if not verify_cover(g, target, x):
        raise InfeasibleCoverError("input is not a feasible cover of its target")
    pushed = {e: ZERO for e in h.edges}
    for e, val in x.weights.items():
        pushed[frozenset(f[v] for v in e)] += val
    out = FractionalCover(frozenset(f[v] for v in target), pushed, sum(pushed.values(), ZERO))
    if out.total != x.total or not verify_cover(h, out.target, out):
        raise RuntimeError("transferred cover failed re-verification")
    return out
