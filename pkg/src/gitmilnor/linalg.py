"""Subspaces of a graded piece Sym^m, reduced under monomial orders.

A :class:`GradedSubspace` keeps an integer RREF of its basis in the reference
(descending grlex) column order.  Reducing under ``<_lambda`` re-sorts the
columns ascending and runs the row-reduction kernel again; the pivot columns
are then exactly the initial monomials of elements of the subspace.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Sequence

from .errors import DimensionMismatch, NotHomogeneous
from .kernel import echelon
from .oneps import OnePS, order_key, weight
from .polycore import Poly, monomials_of_degree


def integer_row(coeffs: Sequence[Fraction]) -> list:
    den = lcm(*(c.denominator for c in coeffs if c)) if any(coeffs) else 1
    return [int(c * den) for c in coeffs]


@dataclass(frozen=True)
class PivotSet:
    """Initial monomials of a subspace, ascending under ``<_lambda``."""

    monomials: tuple
    weight: int
    oneps: OnePS


class GradedSubspace:
    """A k-dimensional subspace of the degree-m forms in n variables."""

    def __init__(self, n: int, m: int, polys: Sequence[Poly] = ()):
        rows = []
        monos = monomials_of_degree(n, m)
        for p in polys:
            if p.n != n:
                raise DimensionMismatch(f"{p.n} variables, expected {n}")
            if p and p.homogeneous_degree() != m:
                raise NotHomogeneous(f"{p} is not of degree {m}")
            rows.append(integer_row([p.coefficient(a) for a in monos]))
        self._init_rows(n, m, rows)

    @classmethod
    def from_rows(cls, n: int, m: int, rows) -> "GradedSubspace":
        """Build from integer coefficient rows in reference monomial order."""
        obj = cls.__new__(cls)
        obj._init_rows(n, m, rows)
        return obj

    def _init_rows(self, n, m, rows):
        self.n = n
        self.m = m
        self.monomials = monomials_of_degree(n, m)
        self.index = {a: j for j, a in enumerate(self.monomials)}
        pivots, reduced = echelon(rows, len(self.monomials))
        self._rows = tuple(tuple(r) for r in reduced)
        self._ref_pivots = tuple(pivots)
        self._cache = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def ambient_dim(self) -> int:
        return len(self.monomials)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.rank

    @property
    def pivot_columns(self) -> tuple:
        return self._ref_pivots

    @property
    def rows(self) -> tuple:
        """Integer RREF rows in reference column order."""
        return self._rows

    def basis(self) -> list:
        return [self._row_to_poly(r, piv) for r, piv in zip(self._rows, self._ref_pivots)]

    def _row_to_poly(self, row, pivot_col, monos=None):
        monos = monos or self.monomials
        lead = row[pivot_col]
        return Poly._raw(self.n, {monos[j]: Fraction(v, lead) for j, v in enumerate(row) if v})

    def contains(self, p: Poly) -> bool:
        if p.n != self.n:
            raise DimensionMismatch(f"{p.n} vs {self.n} variables")
        if not p:
            return True
        if p.homogeneous_degree() != self.m:
            return False
        row = integer_row([p.coefficient(a) for a in self.monomials])
        return len(echelon(list(self._rows) + [row], self.ambient_dim)[0]) == self.rank

    def _ordered(self, lam: OnePS):
        key = lam.weights
        hit = self._cache.get(key)
        if hit is None:
            if lam.n != self.n:
                raise DimensionMismatch(f"1-PS of length {lam.n} on {self.n} variables")
            order = sorted(range(self.ambient_dim), key=lambda j: order_key(lam, self.monomials[j]))
            rows = [[r[j] for j in order] for r in self._rows]
            pivots, reduced = echelon(rows, len(order))
            hit = (order, pivots, reduced)
            self._cache[key] = hit
        return hit

    def __repr__(self):
        return f"GradedSubspace(n={self.n}, m={self.m}, rank={self.rank})"


def reduce_under_order(W: GradedSubspace, lam: OnePS):
    """Return ``(PivotSet, reduced basis)`` with columns ascending in ``<_lambda``."""
    pivots = pivot_set(W, lam)
    order, piv, reduced = W._ordered(lam)
    monos = [W.monomials[j] for j in order]
    basis = [W._row_to_poly(r, p, monos) for r, p in zip(reduced, piv)]
    return pivots, basis


def pivot_set(W: GradedSubspace, lam: OnePS) -> PivotSet:
    order, piv, _ = W._ordered(lam)
    monos = tuple(W.monomials[order[p]] for p in piv)
    return PivotSet(monos, sum(weight(lam, a) for a in monos), lam)


def hm_weight(W: GradedSubspace, lam: OnePS) -> int:
    """Weight of the initial Pluecker coordinate: > 0 unstable, = 0 strictly semistable."""
    return pivot_set(W, lam).weight


def span_of_multiples(generators: Sequence[Poly], m: int) -> GradedSubspace:
    """The degree-m piece of the ideal generated by equal-degree forms."""
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    degs = set()
    for g in generators:
        if g.n != n:
            raise DimensionMismatch("generators live in different polynomial rings")
        if g:
            degs.add(g.homogeneous_degree())
    if len(degs) > 1:
        raise NotHomogeneous(f"generators have mixed degrees {sorted(degs)}")
    if not degs:
        return GradedSubspace.from_rows(n, m, [])
    d = degs.pop()
    if m < d:
        return GradedSubspace.from_rows(n, m, [])
    target = monomials_of_degree(n, m)
    index = {a: j for j, a in enumerate(target)}
    shifts = monomials_of_degree(n, m - d)
    rows = []
    for g in generators:
        if not g:
            continue
        items = list(g.terms.items())
        den = lcm(*(c.denominator for _, c in items))
        ints = [(a, int(c * den)) for a, c in items]
        for s in shifts:
            row = [0] * len(target)
            for a, c in ints:
                row[index[tuple(x + y for x, y in zip(a, s))]] = c
            rows.append(row)
    return GradedSubspace.from_rows(n, m, rows)


def subspace_equal(W1: GradedSubspace, W2: GradedSubspace) -> bool:
    if (W1.n, W1.m) != (W2.n, W2.m):
        raise DimensionMismatch(f"comparing subspaces of Sym^{W1.m} in {W1.n} vars and Sym^{W2.m} in {W2.n}")
    return W1.rows == W2.rows


def rank_of(rows, ncols) -> int:
    return len(echelon([integer_row([Fraction(x) for x in r]) for r in rows], ncols)[0])


def nullspace(rows, ncols) -> list:
    """Basis of {v : row . v = 0 for every row}, as lists of Fractions."""
    pivots, reduced = echelon([integer_row([Fraction(x) for x in r]) for r in rows], ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(reduced, pivots):
            v[p] = Fraction(-r[f], r[p])
        basis.append(v)
    return basis


def pluecker_count(W: GradedSubspace) -> int:
    return comb(W.ambient_dim, W.rank)
