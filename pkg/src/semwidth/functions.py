"""Set functions ``b: 2^V -> Q>=0`` used as bag measures.

Three kinds: the integral and fractional edge cover numbers of a hypergraph,
and explicit tables indexed by bitmask over a sorted domain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from . import kernels
from .cover import ZERO, FractionalIndependentSet, is_edge_dominated, rho_integral, rho_star
from .errors import CapExceededError, WidthFunctionError
from .hypergraph import Hypergraph

TABLE_CAP = 20
VALIDATION_CAP = 10

RHO_INTEGRAL = "rho_integral"
RHO_FRACTIONAL = "rho_fractional"
TABLE = "table"


@dataclass(frozen=True)
class WidthFunction:
    """``kind`` is one of ``rho_integral``, ``rho_fractional``, ``table``.

    The two cover kinds may leave ``hypergraph`` unset; they are then measured
    against whatever hypergraph the caller supplies.
    """

    kind: str
    domain: tuple = ()
    hypergraph: Optional[Hypergraph] = None
    table: Optional[tuple] = None

    def bound_to(self, h: Hypergraph) -> "WidthFunction":
        if self.kind == TABLE or self.hypergraph is not None:
            return self
        return WidthFunction(self.kind, tuple(h.sorted_vertices()), h)

    def mask(self, xs) -> int:
        index = {v: i for i, v in enumerate(self.domain)}
        try:
            return sum(1 << index[v] for v in set(xs))
        except KeyError as exc:
            raise WidthFunctionError(f"{exc.args[0]!r} is outside the function's domain") from None

    def __call__(self, xs) -> Fraction:
        xs = frozenset(xs)
        if self.kind == TABLE:
            return self.table[self.mask(xs)]
        if self.hypergraph is None:
            raise WidthFunctionError("cover measure is not bound to a hypergraph")
        if self.kind == RHO_FRACTIONAL:
            return rho_star(self.hypergraph, xs).value
        return rho_integral(self.hypergraph, xs).value

    def to_json(self):
        from .cover import rational_str
        out = {"kind": self.kind, "domain": list(self.domain)}
        if self.kind == TABLE:
            out["table"] = [rational_str(v) for v in self.table]
        return out


RHO = WidthFunction(RHO_INTEGRAL)
RHO_STAR = WidthFunction(RHO_FRACTIONAL)


def rho_function(h: Hypergraph, integral=False) -> WidthFunction:
    return (RHO if integral else RHO_STAR).bound_to(h)


def table_function(domain, values) -> WidthFunction:
    """Tabulate ``values`` (a callable on frozensets, or a mapping) over all subsets."""
    domain = tuple(sorted(domain))
    n = len(domain)
    if n > TABLE_CAP:
        raise CapExceededError(f"table functions are limited to {TABLE_CAP} vertices, got {n}")
    get = values if callable(values) else (lambda xs: values.get(xs, ZERO))
    table = tuple(Fraction(get(frozenset(domain[i] for i in range(n) if m >> i & 1)))
                  for m in range(1 << n))
    return WidthFunction(TABLE, domain, None, table)


def tabulate(b: WidthFunction, h: Optional[Hypergraph] = None) -> WidthFunction:
    if b.kind == TABLE:
        return b
    if h is not None:
        b = b.bound_to(h)
    return table_function(b.domain, b)


@dataclass(frozen=True)
class FunctionReport:
    monotone: bool
    modular: bool
    submodular: bool
    edge_dominated: bool
    zero_at_empty: bool

    def certified(self, family: str) -> bool:
        shape = self.modular if family == "modular" else self.submodular
        return shape and self.monotone and self.edge_dominated and self.zero_at_empty

    def to_json(self):
        return dict(self.__dict__)


def scaled_integers(values):
    """Exact integer image of rationals under a common denominator."""
    lcm = 1
    for v in values:
        lcm = math.lcm(lcm, v.denominator)
    return [v.numerator * (lcm // v.denominator) for v in values]


def validate_function(b: WidthFunction, h: Hypergraph) -> FunctionReport:
    """Check every property over all pairs of subsets of the domain."""
    b = tabulate(b, h)
    n = len(b.domain)
    if n > VALIDATION_CAP:
        raise CapExceededError(f"exhaustive validation is limited to {VALIDATION_CAP} vertices, got {n}")
    monotone, modular, submodular = kernels.pair_checks(n, scaled_integers(b.table))
    dominated = all(b(e) <= 1 for e in h.edges)
    return FunctionReport(monotone, modular, submodular, dominated, b.table[0] == 0)


def is_monotone(b: WidthFunction) -> bool:
    """``b(X) <= b(X + v)`` for all X and v, which is equivalent to monotonicity."""
    if b.kind != TABLE:
        return True
    t = b.table
    n = len(b.domain)
    for m in range(1 << n):
        for i in range(n):
            if not m >> i & 1 and t[m] > t[m | 1 << i]:
                return False
    return True


def extend_function(b_core: WidthFunction, vertices, h: Optional[Hypergraph] = None) -> WidthFunction:
    """``b(X) = b_core(X ∩ V')`` on the larger vertex set ``vertices``.

    With ``h`` given, edge domination on ``h`` is checked and a violation raises.
    """
    if b_core.kind != TABLE:
        b_core = tabulate(b_core)
    domain = tuple(sorted(vertices))
    if not set(b_core.domain) <= set(domain):
        raise WidthFunctionError("core domain is not contained in the target vertex set")
    n = len(domain)
    if n > TABLE_CAP:
        raise CapExceededError(f"table functions are limited to {TABLE_CAP} vertices, got {n}")
    core_index = {v: i for i, v in enumerate(b_core.domain)}
    core_bit = [1 << core_index[v] if v in core_index else 0 for v in domain]
    cmask = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        cmask[m] = cmask[m ^ low] | core_bit[low.bit_length() - 1]
    b = WidthFunction(TABLE, domain, None, tuple(b_core.table[c] for c in cmask))
    if h is not None:
        bad = [sorted(e) for e in h.sorted_edges() if b(e) > 1]
        if bad:
            raise WidthFunctionError(f"extended function is not edge-dominated on {bad[0]}")
    return b


def modular_from_fis(fis: FractionalIndependentSet, vertices,
                     h: Optional[Hypergraph] = None) -> WidthFunction:
    """``b(X) = sum of the independent-set weights over X``."""
    if any(w < 0 for w in fis.weights.values()):
        raise WidthFunctionError("negative weight in fractional independent set")
    if h is not None and not is_edge_dominated(h, fis):
        raise WidthFunctionError("fractional independent set is not edge-dominated")
    stray = [v for v, w in fis.weights.items() if w and v not in set(vertices)]
    if stray:
        raise WidthFunctionError(f"weight on vertices outside the domain: {sorted(stray)}")
    domain = tuple(sorted(vertices))
    n = len(domain)
    if n > TABLE_CAP:
        raise CapExceededError(f"table functions are limited to {TABLE_CAP} vertices, got {n}")
    weight = [fis.weights.get(v, ZERO) for v in domain]
    table = [ZERO] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        table[m] = table[m ^ low] + weight[low.bit_length() - 1]
    return WidthFunction(TABLE, domain, None, tuple(table))


def function_from_json(data) -> WidthFunction:
    from .cover import parse_rational
    if data["kind"] != TABLE:
        return WidthFunction(data["kind"])
    table = tuple(parse_rational(v) for v in data["table"])
    domain = tuple(data["domain"])
    if len(table) != 1 << len(domain) or list(domain) != sorted(domain):
        raise WidthFunctionError("table size does not match its sorted domain")
    return WidthFunction(TABLE, domain, None, table)


def concave_of_modular(weights: Mapping, threshold, vertices) -> WidthFunction:
    """``b(X) = min(threshold, sum of weights over X)``: monotone and submodular."""
    domain = tuple(sorted(vertices))
    base = modular_from_fis(FractionalIndependentSet(dict(weights), sum(weights.values(), ZERO)), domain)
    t = Fraction(threshold)
    return WidthFunction(TABLE, domain, None, tuple(min(t, v) for v in base.table))


def scale(b: WidthFunction, factor) -> WidthFunction:
    factor = Fraction(factor)
    return WidthFunction(TABLE, b.domain, None, tuple(v * factor for v in b.table))

