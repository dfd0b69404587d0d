"""One-parameter subgroups, weights of monomials and the order <_lambda."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterator, Sequence

from .errors import DimensionMismatch, ParseError
from .polycore import Matrix, Poly, identity_matrix, linear_substitution


@dataclass(frozen=True)
class OnePS:
    """Diagonal 1-PS with integer weights summing to zero."""

    weights: tuple

    def __post_init__(self):
        w = tuple(self.weights)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in w):
            raise TypeError("1-PS weights must be integers")
        if sum(w) != 0:
            raise ValueError(f"1-PS weights {w} do not sum to zero")
        object.__setattr__(self, "weights", w)

    @classmethod
    def parse(cls, text: str) -> "OnePS":
        try:
            return cls(tuple(int(t) for t in text.split(",")))
        except ValueError as exc:
            raise ParseError(f"bad 1-PS {text!r}: {exc}") from None

    @classmethod
    def from_rationals(cls, values) -> "OnePS":
        """Clear denominators and divide out the common factor."""
        values = [Fraction(v) for v in values]
        den = lcm(*(v.denominator for v in values)) if values else 1
        ints = [int(v * den) for v in values]
        g = gcd(*ints)
        if g > 1:
            ints = [x // g for x in ints]
        return cls(tuple(ints))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def is_sorted(self) -> bool:
        w = self.weights
        return all(w[i] <= w[i + 1] for i in range(len(w) - 1))

    @property
    def is_trivial(self) -> bool:
        return not any(self.weights)

    def __neg__(self):
        return OnePS(tuple(-x for x in self.weights))

    def __str__(self):
        return ",".join(map(str, self.weights))


def _check(lam: OnePS, m):
    if len(m) != lam.n:
        raise DimensionMismatch(f"monomial {tuple(m)} has {len(m)} entries, 1-PS has {lam.n}")


def weight(lam: OnePS, m: Sequence[int]) -> int:
    _check(lam, m)
    return sum(a * l for a, l in zip(m, lam.weights))


def order_key(lam: OnePS, m):
    """Ascending sort key for <_lambda.

    Weight first; on ties the monomial with the larger exponent at the first
    differing index is the smaller one.
    """
    return (sum(a * l for a, l in zip(m, lam.weights)), tuple(-a for a in m))


def compare(lam: OnePS, m1, m2) -> int:
    _check(lam, m1)
    _check(lam, m2)
    if sum(m1) != sum(m2):
        raise DimensionMismatch("compare needs monomials of equal degree")
    k1, k2 = order_key(lam, m1), order_key(lam, m2)
    return (k1 > k2) - (k1 < k2)


def sort_monomials(lam: OnePS, monomials) -> list:
    return sorted(monomials, key=lambda m: order_key(lam, m))


def initial_monomial(lam: OnePS, F: Poly):
    if not F:
        raise ValueError("the zero polynomial has no initial monomial")
    if F.n != lam.n:
        raise DimensionMismatch(f"{F.n} variables vs 1-PS of length {lam.n}")
    return min(F.terms, key=lambda m: order_key(lam, m))


def min_weight(lam: OnePS, F: Poly) -> int:
    return min(weight(lam, m) for m in F.terms)


def sorted_onepss(n: int, bound: int, include_trivial: bool = True) -> Iterator[OnePS]:
    """All sorted integer 1-PS with |lambda_i| <= bound."""

    def rec(prefix, lo, remaining):
        if remaining == 1:
            last = -sum(prefix)
            if lo <= last <= bound:
                yield prefix + (last,)
            return
        for v in range(lo, bound + 1):
            # the rest are >= v, so the total is at least sum + remaining*v
            if sum(prefix) + remaining * v > 0:
                break
            yield from rec(prefix + (v,), v, remaining - 1)

    for w in rec((), -bound, n):
        if include_trivial or any(w):
            yield OnePS(w)


def all_onepss(n: int, bound: int) -> Iterator[OnePS]:
    """Every nontrivial integer 1-PS with |lambda_i| <= bound (any order)."""
    for w in product(range(-bound, bound + 1), repeat=n - 1):
        last = -sum(w)
        if abs(last) <= bound and (any(w) or last):
            yield OnePS(w + (last,))


@dataclass(frozen=True)
class FramedOnePS:
    """A 1-PS diagonal in the frame ``x -> frame * x``.

    ``certifies(F)`` is the Hilbert-Mumford test: every monomial of F(frame x)
    has positive weight.
    """

    frame: Matrix
    oneps: OnePS

    @classmethod
    def diagonal(cls, lam: OnePS) -> "FramedOnePS":
        return cls(identity_matrix(lam.n), lam)

    def transform(self, F: Poly) -> Poly:
        if self.frame == identity_matrix(F.n):
            return F
        return linear_substitution(F, self.frame)

    def min_weight(self, F: Poly) -> int:
        return min_weight(self.oneps, self.transform(F))

    def certifies(self, F: Poly) -> bool:
        return bool(F) and self.min_weight(F) > 0
