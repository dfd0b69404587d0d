"""Gradient points, Hilbert functions and points, associated forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Sequence

from .errors import DegenerateGradient, DimensionMismatch, MultipleMissing, NotRegular
from .linalg import GradedSubspace, PivotSet, nullspace, pivot_set, span_of_multiples
from .oneps import FramedOnePS, OnePS, compare
from .polycore import (
    DualPoly,
    Poly,
    exponent_factorial,
    gradient,
    hessian,
    monomials_of_degree,
    polar_pair,
)


def _generator_degree(generators: Sequence[Poly]) -> tuple:
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    degs = set()
    for g in generators:
        if g.n != n:
            raise DimensionMismatch("generators live in different polynomial rings")
        if g:
            degs.add(g.homogeneous_degree())
    if len(degs) != 1:
        raise ValueError(f"generators must be nonzero forms of one degree, got degrees {sorted(degs)}")
    return n, degs.pop()


def _degenerate_certificate(F: Poly, partials) -> FramedOnePS:
    n = F.n
    monos = sorted({a for p in partials for a in p.terms})
    rows = [[p.coefficient(a) for p in partials] for a in monos]
    kernel = nullspace(rows, n)
    a = kernel[0]
    p = next(i for i, v in enumerate(a) if v)
    others = [j for j in range(n) if j != p]
    frame = tuple(
        tuple([a[i]] + [Fraction(int(i == j)) for j in others]) for i in range(n)
    )
    cert = FramedOnePS(frame, OnePS((-(n - 1),) + (1,) * (n - 1)))
    if not cert.certifies(F):
        raise AssertionError("degenerate-gradient certificate failed to verify")
    return cert


def gradient_point(F: Poly) -> GradedSubspace:
    """Span of the first partial derivatives; must be n-dimensional."""
    top = F.homogeneous_degree()
    if top < 2:
        raise ValueError("gradient points need forms of degree >= 2")
    partials = gradient(F)
    W = GradedSubspace(F.n, top - 1, partials)
    if W.rank < F.n:
        raise DegenerateGradient(
            f"partial derivatives span only {W.rank} of {F.n} dimensions",
            certificate=_degenerate_certificate(F, partials),
            rank=W.rank,
        )
    return W


def expected_hilbert_function(n: int, d: int) -> list:
    """Coefficients of (1 + t + ... + t^(d-1))^n."""
    coeffs = [1]
    for _ in range(n):
        out = [0] * (len(coeffs) + d - 1)
        for i, c in enumerate(coeffs):
            for j in range(d):
                out[i + j] += c
        coeffs = out
    return coeffs


def hilbert_function(generators: Sequence[Poly], m_max: int) -> list:
    """dim (S/I)_m for m = 0 .. m_max."""
    n = generators[0].n
    return [comb(n + m - 1, m) - span_of_multiples(generators, m).rank for m in range(m_max + 1)]


class Regularity(NamedTuple):
    regular: bool
    hilbert_function: list

    def __bool__(self):
        return self.regular


def socle_degree(n: int, d: int) -> int:
    return n * (d - 1)


def is_regular_sequence(generators: Sequence[Poly]) -> Regularity:
    """Artinian test: the quotient vanishes in degree n(d-1) + 1."""
    n = generators[0].n if generators else 0
    if len(generators) != n:
        raise ValueError(f"expected {n} generators, got {len(generators)}")
    if any(not g for g in generators):
        return Regularity(False, [])
    n, d = _generator_degree(generators)
    hf = hilbert_function(generators, socle_degree(n, d) + 1)
    return Regularity(hf[-1] == 0, hf)


@dataclass(frozen=True)
class HilbertPoint:
    m: int
    ideal_piece: GradedSubspace
    codim: int


def hilbert_point(generators: Sequence[Poly], m: int, require_regular: bool = True) -> HilbertPoint:
    if require_regular:
        reg = is_regular_sequence(generators)
        if not reg:
            raise NotRegular("generators are not a regular sequence", reg.hilbert_function)
    piece = span_of_multiples(generators, m)
    return HilbertPoint(m, piece, piece.codim)


@dataclass(frozen=True)
class AssociatedForm:
    dual_form: DualPoly
    normalization: str  # "hessian-normalized" or "monomial-normalized"

    @property
    def degree(self) -> int:
        return self.dual_form.homogeneous_degree()


def _apolar_functional(piece: GradedSubspace) -> dict:
    """Coefficients phi_b with sum phi_b c_b = 0 on the hyperplane ``piece``."""
    if piece.codim != 1:
        raise NotRegular(f"socle-degree piece has codimension {piece.codim}, expected 1")
    pivots = piece.pivot_columns
    free = next(j for j in range(piece.ambient_dim) if j not in set(pivots))
    phi = {piece.monomials[free]: Fraction(1)}
    for r, p in zip(piece.rows, pivots):
        if r[free]:
            phi[piece.monomials[p]] = Fraction(-r[free], r[p])
    return phi


def apolar_dual_form(piece: GradedSubspace) -> DualPoly:
    """The dual form annihilating a hyperplane of Sym^m, up to scale."""
    phi = _apolar_functional(piece)
    return DualPoly(piece.n, {b: c / exponent_factorial(b) for b, c in phi.items()})


def associated_form(generators: Sequence[Poly] | None = None, *, form: Poly | None = None) -> AssociatedForm:
    """Degree n(d-1) dual form apolar to (I)_{n(d-1)}.

    With ``form=F`` the generators are the partials of F and the result is
    scaled so that it pairs to 1 with the Hessian of F; otherwise its leading
    grlex coefficient is 1.
    """
    if form is not None:
        if generators is not None:
            raise ValueError("pass either generators or form, not both")
        generators = gradient(form)
    reg = is_regular_sequence(generators)
    if not reg:
        raise NotRegular("generators are not a regular sequence", reg.hilbert_function)
    n, d = _generator_degree(generators)
    A = apolar_dual_form(span_of_multiples(generators, socle_degree(n, d)))
    if form is not None:
        s = polar_pair(A, hessian(form))
        if not s:
            raise AssertionError("associated form pairs to zero with the Hessian")
        return AssociatedForm(A.scale(1 / s), "hessian-normalized")
    return AssociatedForm(A.content_free(), "monomial-normalized")


def socle_piece(generators: Sequence[Poly]) -> GradedSubspace:
    n, d = _generator_degree(generators)
    return hilbert_point(generators, socle_degree(n, d)).ideal_piece


@dataclass(frozen=True)
class SocleReport:
    m0: tuple
    dominates: bool
    pivots: PivotSet


def socle_monomial_report(generators: Sequence[Poly], lam: OnePS, piece: GradedSubspace | None = None) -> SocleReport:
    """The single monomial of degree n(d-1) that is not an initial monomial.

    ``dominates`` checks m0 >=_lambda (x_1 ... x_n)^(d-1).  Pass ``piece`` to
    reuse an already computed socle-degree ideal piece.
    """
    if not lam.is_sorted:
        raise ValueError(f"1-PS {lam} must have ascending weights")
    n, d = _generator_degree(generators)
    if piece is None:
        piece = socle_piece(generators)
    pivots = pivot_set(piece, lam)
    missing = set(piece.monomials) - set(pivots.monomials)
    if len(missing) != 1:
        raise MultipleMissing(f"{len(missing)} monomials missing from the initial ideal in degree {piece.m}")
    m0 = missing.pop()
    balanced = (d - 1,) * n
    return SocleReport(m0, compare(lam, m0, balanced) >= 0, pivots)


def balanced_monomial(n: int, d: int) -> tuple:
    return (d - 1,) * n

