import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from gitmilnor.errors import CapExceeded, DegenerateGradient, NotHomogeneous, PreconditionFailed
from gitmilnor.linalg import GradedSubspace, hm_weight, pivot_set
from gitmilnor.milnor import gradient_point
from gitmilnor.oneps import OnePS, all_onepss, initial_monomial, min_weight, sorted_onepss
from gitmilnor.polycore import Poly, apply_substitution, gradient, monomials_of_degree, parse_poly
from gitmilnor.stability import (
    SearchConfig,
    StateSet,
    align_initials,
    binary_oracle,
    boundary_analysis,
    disjoint_decomposition,
    find_destabilizer,
    find_gradient_destabilizer,
    form_state,
    grassmannian_state,
    grid_separator,
    pair,
    rational_roots,
    squarefree_decomposition,
    torus_verdict,
    transfer_form_to_grad,
    transfer_grad_to_form,
)

from strategies import forms, onepss, unipotents

F_ = Fraction


def P(text, n=None):
    return parse_poly(text, n)


def span(*texts, n=2):
    polys = [P(t, n) for t in texts]
    return GradedSubspace(n, polys[0].homogeneous_degree(), polys)


class TestStates:
    def test_single_monomial(self):
        assert form_state(P("x^2*y")).points == ((F_(1, 2), F_(-1, 2)),)

    def test_symmetric_pair(self):
        assert set(form_state(P("x^3+y^3")).points) == {(F_(3, 2), F_(-3, 2)), (F_(-3, 2), F_(3, 2))}

    def test_two_monomials(self):
        assert set(form_state(P("x^2*y-x*y^2")).points) == {(F_(1, 2), F_(-1, 2)), (F_(-1, 2), F_(1, 2))}

    def test_zero_rejected(self):
        with pytest.raises(NotHomogeneous):
            form_state(Poly.zero(2))

    def test_grassmannian_examples(self):
        assert grassmannian_state(span("x^2", "y^2")).points == ((0, 0),)
        assert grassmannian_state(span("x*y", "x^2")).points == ((1, -1),)
        assert grassmannian_state(span("x^2", "x*y", "y^2")).points == ((0, 0),)
        assert grassmannian_state(span("x^2", "y^2")).source == "grassmannian-pluecker"

    def test_cap(self):
        with pytest.raises(CapExceeded):
            grassmannian_state(span("x^3", "y^3"), cap=5)

    def test_points_sum_to_zero(self):
        W = span("x^2+y*z", "x*y-z^2", "y^2", n=3)
        assert all(sum(p) == 0 for p in grassmannian_state(W).points)


def grid_status(S: StateSet, bound: int) -> str:
    """Exhaustive classification over integer 1-PS with entries <= bound."""
    pts = set(S.points)
    support = False
    for lam in all_onepss(S.n, bound):
        vals = [pair(lam, s) for s in pts]
        if min(vals) > 0:
            return "unstable"
        if min(vals) >= 0:
            support = True
    return "strictly-semistable" if support else "stable"


@st.composite
def states(draw):
    n = draw(st.integers(2, 3))
    top = draw(st.integers(2, 4))
    F = draw(forms(n=n, degree=top))
    return form_state(F), top


class TestTorusVerdict:
    def test_single_point_unstable(self):
        v = torus_verdict(form_state(P("x^2*y")))
        assert v.status == "unstable" and v.certificate.oneps.weights == (1, -1)

    def test_symmetric_pair_stable(self):
        v = torus_verdict(form_state(P("x^3+y^3")))
        assert v.status == "stable"
        assert v.certificate.coefficients == (F_(1, 2), F_(1, 2))

    def test_center_strictly_semistable(self):
        v = torus_verdict(form_state(P("x^2*y^2")))
        assert v.status == "strictly-semistable"
        assert v.certificate.supporting is not None

    @pytest.mark.parametrize("text", ["x^2*y", "x^3+y^3", "x^2*y^2", "x^4 + x^2*y^2", "x^3*y + x*y^3"])
    def test_binary_fast_path_agrees_with_lp(self, text):
        S = form_state(P(text))
        assert torus_verdict(S).status == torus_verdict(S, force_lp=True).status

    def test_ternary_examples(self):
        assert torus_verdict(form_state(P("x*y*z"))).status == "strictly-semistable"
        assert torus_verdict(form_state(P("x^3+y^3+z^3"))).status == "stable"
        assert torus_verdict(form_state(P("x^2*y + y^2*z", 3))).status == "unstable"
        assert torus_verdict(form_state(P("x^2*y + y^2*z + z^2*x"))).status == "stable"

    @given(states())
    def test_lp_matches_grid(self, st_top):
        S, top = st_top
        bound = 2 * top * S.n
        status = torus_verdict(S).status
        assert status == grid_status(S, bound)
        assert status == torus_verdict(S, force_lp=True).status

    def test_grid_separator(self):
        lam = grid_separator(form_state(P("x^2*y")), 3)
        assert lam is not None and min(pair(lam, s) for s in form_state(P("x^2*y")).points) > 0


class TestBinaryOracle:
    def test_double_root_unstable(self):
        v = binary_oracle(P("x^2*y"))
        assert v.status == "unstable" and v.max_multiplicity == 2
        assert v.destabilizer.certifies(P("x^2*y"))

    def test_half_degree(self):
        assert binary_oracle(P("x^2*y^2")).status == "strictly-semistable"

    def test_distinct_roots(self):
        assert binary_oracle(P("x^2*y + x*y^2")).status == "stable"  # x y (x + y)

    def test_triple_rational_root(self):
        F = P("x^3 + 3*x^2*y + 3*x*y^2 + y^3")
        v = binary_oracle(F)
        assert v.status == "unstable" and v.max_multiplicity == 3
        assert v.destabilizer.certifies(F)

    def test_root_at_infinity(self):
        v = binary_oracle(P("x*y^3 + y^4"))
        assert v.status == "unstable"
        assert v.destabilizer.certifies(P("x*y^3 + y^4"))

    def test_squarefree_decomposition(self):
        # t^2 (t + 1)^2 -> (t^2 + t)^2
        assert squarefree_decomposition([0, 0, 1, 2, 1]) == [([0, 1, 1], 2)]

    def test_rational_roots(self):
        assert rational_roots([-2, 1]) == [2]
        assert rational_roots([F_(-1, 4), 0, 1]) == [F_(-1, 2), F_(1, 2)]
        assert rational_roots([1, 0, 1]) == []

    @given(st.lists(st.integers(-2, 2), min_size=4, max_size=7).filter(any))
    def test_multiplicity_matches_sympy(self, cs):
        D = len(cs) - 1
        F = Poly(2, {(D - i, i): c for i, c in enumerate(cs) if c})
        x, y = sympy.symbols("x y")
        expr = sum(c * x ** (D - i) * y**i for i, c in enumerate(cs))
        _, factors = sympy.factor_list(expr)
        top = max(m for _, m in factors)
        assert binary_oracle(F).max_multiplicity == top


class TestSearch:
    def test_torus_suffices(self):
        v = find_destabilizer(P("x^2*y"), SearchConfig(frame_budget=0))
        assert v.status == "unstable"
        assert v.certificate.oneps.weights == (1, -1)

    def test_never_claims_semistable(self):
        v = find_destabilizer(P("x^3+y^3"), SearchConfig(frame_budget=5))
        assert v.status == "unknown"
        # identity, five random frames, and one targeted at the root x = -y
        assert v.certificate.frames_tried == 7

    def test_targeted_frame(self):
        F = P("x^3 + 3*x^2*y + 3*x*y^2 + y^3")
        v = find_destabilizer(F, SearchConfig(frame_budget=0))
        assert v.status == "unstable" and v.certificate.certifies(F)

    def test_grid_strategy(self):
        v = find_destabilizer(P("x^2*y + y^2*z", 3), SearchConfig(frame_budget=0, strategy="grid"))
        assert v.status == "unstable"

    def test_seeded_and_deterministic(self):
        F = P("x^2*y + x*y*z + y^3", 3)
        a = find_destabilizer(F, SearchConfig(seed=4, frame_budget=3))
        b = find_destabilizer(F, SearchConfig(seed=4, frame_budget=3))
        assert a == b

    def test_bad_config(self):
        with pytest.raises(ValueError):
            SearchConfig(frame_budget=-1)
        with pytest.raises(ValueError):
            SearchConfig(strategy="kempf")

    def test_gradient_search_nondegenerate(self):
        v = find_gradient_destabilizer(P("x^2*y"), SearchConfig(frame_budget=0))
        assert v.status == "unstable" and v.certificate.pluecker_weight > 0

    @given(forms(n=3, degree=3))
    def test_certificates_recheck_independently(self, F):
        v = find_destabilizer(F, SearchConfig(frame_budget=2))
        if v.status != "unstable":
            return
        M, lam = v.certificate.frame, v.certificate.oneps
        xs = sympy.symbols("x0:3")
        images = [sum(sympy.Rational(M[i][j].numerator, M[i][j].denominator) * xs[j] for j in range(3))
                  for i in range(3)]
        expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(im**e for im, e in zip(images, a))
                   for a, c in F.terms.items())
        mons = sympy.Poly(sympy.expand(expr), *xs).monoms()
        assert mons and min(sum(w * e for w, e in zip(lam.weights, m)) for m in mons) > 0


class TestAlignment:
    def test_collision_resolved(self):
        F = P("x^3+x^2*y")
        T = align_initials(F, OnePS((-1, 1)))
        assert dict(T.coefficients) == {(0, 1): F_(-1, 3)}
        G = apply_substitution(F, T)
        inits = {initial_monomial(OnePS((-1, 1)), p) for p in gradient(G)}
        assert inits == {(2, 0), (1, 1)}

    def test_already_distinct(self):
        assert align_initials(P("x^2*y"), OnePS((-1, 1))).is_identity()
        assert align_initials(P("x^3+y^3"), OnePS((-1, 1))).is_identity()

    def test_requires_sorted(self):
        with pytest.raises(ValueError):
            align_initials(P("x^2*y"), OnePS((1, -1)))

    def test_degenerate(self):
        with pytest.raises(DegenerateGradient):
            align_initials(P("x^3", 2), OnePS((-1, 1)))

    @given(st.data())
    def test_initials_distinct_and_equal_pivots(self, data):
        n = data.draw(st.integers(2, 3))
        F = data.draw(forms(n=n, degree=data.draw(st.integers(2, 4))))
        lam = data.draw(onepss(n, sorted_=True))
        T = data.draw(unipotents(n))
        F = apply_substitution(F, T)
        try:
            W = gradient_point(F)
        except DegenerateGradient:
            return
        U = align_initials(F, lam)
        G = apply_substitution(F, U)
        inits = [initial_monomial(lam, p) for p in gradient(G)]
        assert len(set(inits)) == n
        assert set(inits) == set(pivot_set(W, lam).monomials)
        assert pivot_set(gradient_point(G), lam) == pivot_set(W, lam)


class TestForwardTransfer:
    def test_monomial(self):
        cert = transfer_form_to_grad(P("x^2*y"), OnePS((1, -1)))
        assert cert.pluecker_weight == 2
        assert cert.partial_min_weights == (0, 2) and cert.bounds == (-1, 1)

    def test_degenerate(self):
        with pytest.raises(DegenerateGradient) as exc:
            transfer_form_to_grad(P("y^3", 2), OnePS((-1, 1)))
        assert exc.value.certificate.certifies(P("y^3", 2))

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            transfer_form_to_grad(P("x^3+y^3"), OnePS((-1, 1)))

    def test_searched_frame(self):
        F = P("x^3 + 2*x^2*y")  # (x + 2y) x^2
        v = find_destabilizer(F, SearchConfig(frame_budget=0))
        assert v.status == "unstable"
        G = v.certificate.transform(F)
        assert transfer_form_to_grad(G, v.certificate.oneps).pluecker_weight > 0

    @given(st.data())
    def test_weight_bound_holds(self, data):
        n = data.draw(st.integers(2, 3))
        F = data.draw(forms(n=n, degree=data.draw(st.integers(2, 4))))
        lam = data.draw(onepss(n))
        if min_weight(lam, F) <= 0:
            return
        try:
            cert = transfer_form_to_grad(F, lam)
        except DegenerateGradient as exc:
            assert exc.certificate.certifies(F)
            return
        assert cert.pluecker_weight >= sum(cert.partial_min_weights) > 0


class TestBackwardTransfer:
    def test_monomial(self):
        cert = transfer_grad_to_form(P("x^2*y"), OnePS((1, -1)))
        assert cert.initial_weights == (0, 2)
        assert cert.mu_prime == (-1, 1) and cert.mu == (0, 0)
        assert cert.functional == (3, -3) and cert.min_value == 3
        assert cert.destabilizer.oneps.weights == (1, -1)
        assert cert.destabilizer.certifies(P("x^2*y"))

    def test_degenerate_path(self):
        F = P("x^3", 2)
        cert = transfer_grad_to_form(F, OnePS((1, -1)))
        assert cert.mode == "degenerate" and cert.min_value == 3
        assert cert.destabilizer.certifies(F)

    def test_boundary_precondition(self):
        with pytest.raises(PreconditionFailed):
            transfer_grad_to_form(P("x^3+y^3"), OnePS((-1, 1)))

    def test_boundary_analysis(self):
        rep = boundary_analysis(P("x^3+y^3"), OnePS((-1, 1)))
        assert rep.mu_prime == (-2, 2)  # d * lambda
        assert rep.functional_is_zero
        assert rep.blocks == ((0,), (1,))

    def test_boundary_not_stable(self):
        # zero Pluecker weight but a nonvanishing functional: F is not stable
        F = P("x^2*y^2")
        lam = OnePS((-1, 1))
        assert hm_weight(gradient_point(F), lam) == 0
        rep = boundary_analysis(F, lam)
        assert rep.functional == (-4, 4) and not rep.functional_is_zero
        assert rep.supporting == lam
        assert min_weight(rep.supporting, F) == 0

    @given(st.data())
    def test_every_gradient_destabilizer_transfers(self, data):
        n = data.draw(st.integers(2, 3))
        F = data.draw(forms(n=n, degree=data.draw(st.integers(3, 4))))
        F = apply_substitution(F, data.draw(unipotents(n)))
        try:
            W = gradient_point(F)
        except DegenerateGradient:
            return
        for lam in all_onepss(n, 2):
            if hm_weight(W, lam) > 0:
                cert = transfer_grad_to_form(F, lam)
                assert cert.min_value > 0
                assert cert.destabilizer.certifies(F)


class TestDecomposition:
    def test_fermat(self):
        dec = disjoint_decomposition(P("x^3+y^3"))
        assert dec.blocks == ((0,), (1,)) and dec.fixing.weights == (-1, 1)

    def test_connected(self):
        dec = disjoint_decomposition(P("x^2*y"))
        assert dec.blocks == ((0, 1),) and dec.fixing is None

    def test_ternary(self):
        dec = disjoint_decomposition(P("x^3+y^2*z+z^3"))
        assert dec.blocks == ((0,), (1, 2)) and dec.fixing.weights == (-2, 1, 1)

    def test_fixing_oneps_fixes_form(self):
        F = P("x^3 + x*y^2 + z^3 + z*w^2")
        dec = disjoint_decomposition(F)
        W = gradient_point(F)
        assert hm_weight(W, dec.fixing) == 0 and hm_weight(W, -dec.fixing) == 0


class TestFermatBoundary:
    @pytest.mark.parametrize("n,top", [(2, 3), (2, 4), (3, 3), (3, 4), (4, 3)])
    def test_zero_weight_for_every_sorted_oneps(self, n, top):
        F = Poly(n, {tuple(top * int(i == j) for j in range(n)): 1 for i in range(n)})
        W = gradient_point(F)
        assert all(hm_weight(W, lam) == 0 for lam in sorted_onepss(n, 4))
