"""Exact linear programming over the rationals.

Dense two-phase simplex with Bland's rule on problems in standard form
``min c.x  s.t.  A x = b, x >= 0``.  Sizes here are tiny (state polytopes
in at most a handful of dimensions), so clarity wins over speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible", "unbounded"
    x: tuple | None = None
    value: Fraction | None = None


def _pivot(T, r, col):
    prow = T[r]
    pv = prow[col]
    if pv != 1:
        prow = [v / pv for v in prow]
        T[r] = prow
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[col]
        if f:
            for j in nz:
                row[j] -= f * prow[j]


def _simplex(T, basis, ncols):
    """Minimize the objective stored in the last row of T over columns < ncols."""
    obj = T[-1]
    m = len(T) - 1
    while True:
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return "optimal"
        best = None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        r = best[1]
        _pivot(T, r, col)
        basis[r] = col
        obj = T[-1]


def solve(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b`` and ``x >= 0``."""
    m = len(A)
    nv = len(c)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        if len(row) != nv:
            raise ValueError("constraint row length does not match objective")
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    width = nv + m
    obj1 = [Fraction(0)] * nv + [Fraction(1)] * m + [Fraction(0)]
    for row in rows:
        obj1 = [o - v for o, v in zip(obj1, row)]
    for k in range(nv, width):
        obj1[k] = Fraction(0)
    T = rows + [obj1]
    basis = list(range(nv, width))
    _simplex(T, basis, width)
    if T[-1][-1] != 0:
        return LPResult("infeasible")
    # drive artificial variables out of the basis
    i = 0
    while i < len(basis):
        if basis[i] >= nv:
            col = next((j for j in range(nv) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, col)
            basis[i] = col
        i += 1
    T = [row[:nv] + [row[-1]] for row in T[:-1]]
    cc = [Fraction(v) for v in c]
    obj = cc + [Fraction(0)]
    for row, bi in zip(T, basis):
        cb = cc[bi]
        if cb:
            obj = [o - cb * v for o, v in zip(obj, row)]
    T.append(obj)
    status = _simplex(T, basis, nv)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * nv
    for row, bi in zip(T[:-1], basis):
        x[bi] = row[-1]
    value = sum((ci * xi for ci, xi in zip(cc, x)), Fraction(0))
    return LPResult("optimal", tuple(x), value)


def feasible_point(A: Sequence[Sequence], b: Sequence, nv: int | None = None):
    """Some x >= 0 with A x = b, or None."""
    nv = nv if nv is not None else (len(A[0]) if A else 0)
    res = solve([0] * nv, A, b)
    return res.x if res.status == "optimal" else None
