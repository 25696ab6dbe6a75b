"""Dense exact-rational simplex for ``max c.y  s.t.  A y <= b, y >= 0`` with ``b >= 0``.

The slack basis is feasible at the origin, so no phase one is needed.
Bland's rule (lowest-index entering and leaving variables) rules out cycling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class UnboundedLP(Exception):
    pass


@dataclass
class LPSolution:
    value: Fraction
    primal: list   # y, one entry per column
    dual: list     # one entry per row; optimal for  min b.x  s.t.  A^T x >= c, x >= 0
    pivots: int


def maximize(A, b, c) -> LPSolution:
    m = len(A)
    n = len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative")
    width = n + m
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [Fraction(0)] * m
        row[n + i] = Fraction(1)
        rows.append(row)
    rhs = [Fraction(v) for v in b]
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * m
    value = Fraction(0)
    basis = [n + i for i in range(m)]
    pivots = 0

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedLP("objective is unbounded")
        piv_row = rows[leave]
        p = piv_row[enter]
        if p != 1:
            piv_row[:] = [v / p for v in piv_row]
            rhs[leave] /= p
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    r = rows[i]
                    for j in range(width):
                        if piv_row[j]:
                            r[j] -= f * piv_row[j]
                    rhs[i] -= f * rhs[leave]
        f = obj[enter]
        for j in range(width):
            if piv_row[j]:
                obj[j] -= f * piv_row[j]
        value -= f * rhs[leave]
        basis[leave] = enter
        pivots += 1

    primal = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            primal[j] = rhs[i]
    dual = obj[n:]
    return LPSolution(value, primal, dual, pivots)
