import random
from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from gitmilnor.corpus import CorpusSpec, generate
from gitmilnor.errors import DegenerateGradient, MultipleMissing, NotRegular
from gitmilnor.linalg import GradedSubspace, span_of_multiples, subspace_equal
from gitmilnor.milnor import (
    associated_form,
    expected_hilbert_function,
    gradient_point,
    hilbert_function,
    hilbert_point,
    is_regular_sequence,
    socle_degree,
    socle_monomial_report,
    socle_piece,
)
from gitmilnor.oneps import OnePS, order_key, sorted_onepss
from gitmilnor.polycore import Poly, gradient, hessian, monomials_of_degree, parse_poly, polar_pair


def gens(*texts, n=None):
    polys = [parse_poly(t) for t in texts]
    n = n or max(p.n for p in polys)
    return [parse_poly(t, n) for t in texts]


def regular_items(count, n_values=(2, 3), degrees=(3, 4), seed=5):
    return generate(CorpusSpec("random-regular", n_values, degrees, count, seed))


class TestGradientPoint:
    def test_fermat(self):
        W = gradient_point(parse_poly("x^3+y^3"))
        assert subspace_equal(W, GradedSubspace(2, 2, gens("x^2", "y^2")))

    def test_rank_two(self):
        W = gradient_point(parse_poly("x^2*y"))
        assert W.rank == 2
        assert subspace_equal(W, GradedSubspace(2, 2, gens("2*x*y", "x^2")))

    def test_degenerate_carries_certificate(self):
        F = parse_poly("x^3", 2)
        with pytest.raises(DegenerateGradient) as exc:
            gradient_point(F)
        cert = exc.value.certificate
        assert cert.oneps.weights == (-1, 1)
        assert cert.certifies(F)

    def test_degenerate_after_change(self):
        F = parse_poly("x^3 + 3*x^2*y + 3*x*y^2 + y^3")  # (x + y)^3
        with pytest.raises(DegenerateGradient) as exc:
            gradient_point(F)
        assert exc.value.certificate.certifies(F)

    def test_degenerate_ternary(self):
        F = parse_poly("x^3 + x*y^2", 3)
        with pytest.raises(DegenerateGradient) as exc:
            gradient_point(F)
        cert = exc.value.certificate
        assert cert.oneps.weights == (-2, 1, 1)
        assert cert.certifies(F)

    @given(st.integers(2, 3), st.integers(2, 4))
    def test_euler_membership(self, n, top):
        rng = random.Random(n * 10 + top)
        F = Poly(n, {a: rng.choice([-2, -1, 1, 2]) for a in monomials_of_degree(n, top)})
        assert span_of_multiples(gradient(F), top).contains(F)


class TestHilbertFunction:
    def test_binary_squares(self):
        assert hilbert_function(gens("x^2", "y^2"), 3) == [1, 2, 1, 0]

    def test_common_zero(self):
        assert hilbert_function(gens("x^2", "x*y"), 3) == [1, 2, 1, 1]

    def test_ternary_squares(self):
        assert hilbert_function(gens("x^2", "y^2", "z^2"), 4) == [1, 3, 3, 1, 0]

    @pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
    def test_expected_matches_symbolic_power(self, n, d):
        t = sympy.symbols("t")
        poly = sympy.Poly(sum(t**i for i in range(d)) ** n, t)
        assert expected_hilbert_function(n, d) == [int(c) for c in reversed(poly.all_coeffs())]

    def test_regular_sequences_are_gorenstein(self):
        for item in regular_items(12):
            g = item.generator_list()
            n, d = item.n, item.degree - 1
            nu = socle_degree(n, d)
            hf = hilbert_function(g, nu + 1)
            assert hf[:-1] == expected_hilbert_function(n, d)
            assert hf == hf[:nu + 1][::-1] + [0]
            assert hf[nu] == 1 and hf[nu + 1] == 0


class TestRegularity:
    def test_squares(self):
        assert is_regular_sequence(gens("x^2", "y^2"))

    def test_common_zero(self):
        reg = is_regular_sequence(gens("x^2", "x*y"))
        assert not reg and reg.hilbert_function[-1] == 1

    def test_sum_of_squares_and_product(self):
        assert is_regular_sequence(gens("x^2+y^2", "x*y"))

    def test_wrong_count(self):
        with pytest.raises(ValueError):
            is_regular_sequence(gens("x^2", "y^2", n=3))

    def test_smooth_cubic(self):
        assert is_regular_sequence(gradient(parse_poly("x^3+y^3+z^3")))
        assert not is_regular_sequence(gradient(parse_poly("x^3+y^3", 3)))  # cone over points
        assert not is_regular_sequence(gradient(parse_poly("x^2*z - y^3")))  # cuspidal cubic


class TestHilbertPoint:
    def test_first_point_is_gradient(self):
        g = gradient(parse_poly("x^3+y^3"))
        hp = hilbert_point(g, 2)
        assert hp.codim == 1
        assert subspace_equal(hp.ideal_piece, GradedSubspace(2, 2, gens("x^2", "y^2")))

    def test_socle_degree_codim_one(self):
        assert hilbert_point(gens("x^2", "y^2"), 2).codim == 1

    def test_past_socle_everything(self):
        assert hilbert_point(gens("x^2", "y^2"), 3).codim == 0

    def test_not_regular(self):
        with pytest.raises(NotRegular):
            hilbert_point(gens("x^2", "x*y"), 2)
        assert hilbert_point(gens("x^2", "x*y"), 2, require_regular=False).codim == 1


def kernel_dual_form(generators):
    """Independent solve: coefficients a_b with <sum a_b u^b, x^s g_i> = 0."""
    n = generators[0].n
    d = generators[0].homogeneous_degree()
    nu = socle_degree(n, d)
    monos = monomials_of_degree(n, nu)
    unknowns = sympy.symbols(f"a0:{len(monos)}")
    eqs = []
    for g in generators:
        for s in monomials_of_degree(n, nu - d):
            h = g.mul_monomial(s)
            eqs.append(sum(unknowns[j] * sympy.Integer(factorial_prod(b)) * sympy.Rational(h.coefficient(b).numerator, h.coefficient(b).denominator)
                           for j, b in enumerate(monos)))
    sol = sympy.linsolve(eqs, unknowns)
    (vec,) = sol
    free = sorted(set().union(*(sympy.sympify(v).free_symbols for v in vec)), key=str)
    assert len(free) == 1
    vec = [sympy.sympify(v).subs(free[0], 1) for v in vec]
    return {b: Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for b, v in zip(monos, vec) if v != 0}


def factorial_prod(b):
    out = 1
    for e in b:
        out *= factorial(e)
    return out


def proportional(A: Poly, coeffs: dict) -> bool:
    if set(A.terms) != set(coeffs):
        return False
    b0 = next(iter(coeffs))
    r = A.coefficient(b0) / coeffs[b0]
    return all(A.coefficient(b) == r * c for b, c in coeffs.items())


class TestAssociatedForm:
    def test_binary_fermat_hessian_normalized(self):
        A = associated_form(form=parse_poly("x^3+y^3"))
        assert A.normalization == "hessian-normalized"
        assert A.dual_form == parse_poly("1/36*u1*u2", dual=True)

    def test_ternary_squares(self):
        A = associated_form(gens("x^2", "y^2", "z^2"))
        assert A.normalization == "monomial-normalized"
        assert A.dual_form == parse_poly("u1*u2*u3", dual=True)

    def test_sum_of_squares(self):
        A = associated_form(gens("x^2+y^2", "x*y"))
        assert A.dual_form == parse_poly("u1^2 - u2^2", dual=True)

    def test_not_regular(self):
        with pytest.raises(NotRegular):
            associated_form(gens("x^2", "x*y"))

    def test_matches_independent_kernel(self):
        for item in regular_items(6, degrees=(3, 4), seed=9):
            g = item.generator_list()
            A = associated_form(g).dual_form
            assert proportional(A, kernel_dual_form(g))

    def test_apolar_to_ideal_piece(self):
        for item in regular_items(6, seed=3):
            g = item.generator_list()
            A = associated_form(g).dual_form
            piece = socle_piece(g)
            assert all(polar_pair(A, b) == 0 for b in piece.basis())
            assert any(polar_pair(A, Poly.monomial(a)) for a in piece.monomials)

    def test_hessian_normalization(self):
        for text in ("x^3+y^3+z^3", "x^3+x*y^2+y^3", "x^4 + y^4 + x^2*y^2"):
            F = parse_poly(text)
            A = associated_form(form=F).dual_form
            assert polar_pair(A, hessian(F)) == 1

    @pytest.mark.parametrize("n,d", [(n, d) for n in (2, 3, 4) for d in (2, 3, 4) if n * (d - 1) <= 9])
    def test_fermat_powers_give_balanced_monomial(self, n, d):
        powers = [Poly.monomial(tuple(d * int(i == j) for j in range(n))) for i in range(n)]
        A = associated_form(powers).dual_form
        assert list(A.terms) == [(d - 1,) * n]

    @pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
    def test_fermat_hessian_coefficient(self, n, d):
        F = Poly(n, {tuple((d + 1) * int(i == j) for j in range(n)): 1 for i in range(n)})
        A = associated_form(form=F).dual_form
        expected = Fraction(1, ((d + 1) * d) ** n * factorial(d - 1) ** n)
        assert dict(A.terms) == {(d - 1,) * n: expected}


class TestSocleMonomial:
    def test_symmetric(self):
        rep = socle_monomial_report(gens("x^2", "y^2"), OnePS((-1, 1)))
        assert rep.m0 == (1, 1) and rep.dominates

    def test_sum_of_squares(self):
        rep = socle_monomial_report(gens("x^2+y^2", "x*y"), OnePS((-1, 1)))
        assert rep.m0 == (0, 2) and rep.dominates
        assert set(rep.pivots.monomials) == {(2, 0), (1, 1)}

    def test_ternary(self):
        rep = socle_monomial_report(gens("x^2", "y^2", "z^2"), OnePS((-1, 0, 1)))
        assert rep.m0 == (1, 1, 1) and rep.dominates

    def test_requires_sorted(self):
        with pytest.raises(ValueError):
            socle_monomial_report(gens("x^2", "y^2"), OnePS((1, -1)))

    def test_multiple_missing_signalled(self):
        piece = GradedSubspace(2, 2, gens("x^2", n=2))
        with pytest.raises(MultipleMissing):
            socle_monomial_report(gens("x^2", "y^2"), OnePS((-1, 1)), piece)

    def test_m0_is_largest_in_dual_support(self):
        # the missing monomial of a hyperplane is the order-largest one its
        # annihilating functional sees
        for item in regular_items(8, seed=21):
            g = item.generator_list()
            A = associated_form(g).dual_form
            piece = socle_piece(g)
            for lam in sorted_onepss(item.n, 3, include_trivial=False):
                rep = socle_monomial_report(g, lam, piece)
                top = max(A.terms, key=lambda b: order_key(lam, b))
                assert rep.m0 == top
                assert rep.dominates

