"""Pure-Python exact row reduction (fallback kernel).

Rows are lists of Python ints; the result is the reduced row echelon form of
their span over Q, scaled so each row is primitive with a positive pivot.
"""
from math import gcd


def _primitive(row):
    g = gcd(*row)
    if g > 1:
        return [v // g for v in row]
    return row


def echelon(rows, ncols):
    """Return ``(pivots, reduced)`` for the row space of ``rows``.

    Columns are processed left to right, so ``pivots`` are the leftmost
    positions reachable in the span: the initial monomials when the columns
    are sorted ascending.
    """
    work = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)}, expected {ncols}")
        if any(r):
            work.append(_primitive(list(r)))
    pivots = []
    done = []
    for col in range(ncols):
        if not work:
            break
        best = None
        for idx, r in enumerate(work):
            v = r[col]
            if v and (best is None or abs(v) < abs(work[best][col])):
                best = idx
                if abs(v) == 1:
                    break
        if best is None:
            continue
        prow = work.pop(best)
        p = prow[col]
        if p < 0:
            prow = [-v for v in prow]
            p = -p
        nz = [j for j in range(col, ncols) if prow[j]]
        nxt = []
        for r in work:
            a = r[col]
            if a:
                g = gcd(p, a)
                s, t = p // g, a // g
                if s != 1:
                    r = [v * s for v in r]
                for j in nz:
                    r[j] -= t * prow[j]
                if not any(r):
                    continue
                r = _primitive(r)
            nxt.append(r)
        work = nxt
        for k, r in enumerate(done):
            a = r[col]
            if a:
                g = gcd(p, a)
                s, t = p // g, a // g
                if s != 1:
                    r = [v * s for v in r]
                for j in nz:
                    r[j] -= t * prow[j]
                done[k] = _primitive(r)
        pivots.append(col)
        done.append(prow)
    return pivots, done
