"""Torus stability, destabilizer search and the two transfer algorithms.

Conventions: a frame ``M`` acts by substitution ``F -> F(M x)``; a 1-PS
``lam`` destabilizes F in that frame when every monomial of ``F(M x)`` has
positive ``lam``-weight, and destabilizes a subspace W when the initial
Pluecker coordinate of ``W(M x)`` has positive weight.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Sequence

from .errors import CapExceeded, DegenerateGradient, PreconditionFailed
from .linalg import GradedSubspace, hm_weight, nullspace, pivot_set, rank_of
from .lp import feasible_point
from .milnor import gradient_point
from .oneps import (
    FramedOnePS,
    OnePS,
    all_onepss,
    initial_monomial,
    min_weight,
    order_key,
    weight,
)
from .polycore import (
    Matrix,
    Poly,
    UpperTriangularChange,
    apply_substitution,
    gradient,
    identity_matrix,
    linear_substitution,
    mat_mul,
    permutation_matrix,
    transpose,
)

# -- states ---------------------------------------------------------------------


@dataclass(frozen=True)
class StateSet:
    """Weight characters recentred at the barycenter (each point sums to 0)."""

    points: tuple
    source: str  # "form-support" or "grassmannian-pluecker"

    @property
    def n(self) -> int:
        return len(self.points[0])


def _recentre(exps, total, n):
    shift = Fraction(total, n)
    return tuple(Fraction(e) - shift for e in exps)


def form_state(F: Poly) -> StateSet:
    top = F.homogeneous_degree()
    pts = sorted({_recentre(a, top, F.n) for a in F.terms}, reverse=True)
    return StateSet(tuple(pts), "form-support")


def _det_int(M) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1] if n else 1


def nonzero_pluecker_subsets(W: GradedSubspace, cap: int = 20000):
    """Column subsets (reference order) whose maximal minor is nonzero."""
    k, N = W.rank, W.ambient_dim
    if comb(N, k) > cap:
        raise CapExceeded(f"C({N},{k}) = {comb(N, k)} Pluecker coordinates exceed cap {cap}")
    rows = W.rows
    for cols in combinations(range(N), k):
        if _det_int([[r[j] for j in cols] for r in rows]):
            yield cols


def grassmannian_state(W: GradedSubspace, cap: int = 20000) -> StateSet:
    pts = set()
    total = W.rank * W.m
    for cols in nonzero_pluecker_subsets(W, cap):
        s = [0] * W.n
        for j in cols:
            for i, e in enumerate(W.monomials[j]):
                s[i] += e
        pts.add(_recentre(s, total, W.n))
    return StateSet(tuple(sorted(pts, reverse=True)), "grassmannian-pluecker")


# -- verdicts -------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexWitness:
    """0 = sum c_i p_i with c_i >= 0, sum c_i = 1.

    For a stable verdict all coefficients are positive and the points span the
    zero-sum hyperplane; for a strictly semistable one ``supporting`` is a
    nonzero 1-PS with weight >= 0 on every state point.
    """

    points: tuple
    coefficients: tuple
    supporting: OnePS | None = None


@dataclass(frozen=True)
class BudgetReport:
    frames_tried: int
    seed: int
    entry_bound: int
    strategy: str


@dataclass(frozen=True)
class StabilityVerdict:
    status: str  # "stable", "strictly-semistable", "unstable", "unknown"
    certificate: object = None


def pair(lam, s) -> Fraction:
    ws = lam.weights if isinstance(lam, OnePS) else lam
    return sum((Fraction(w) * x for w, x in zip(ws, s)), Fraction(0))


def _separating_lp(pts, n):
    # lam = p - q; sum(lam) = 0; <lam, s> - e_s = 1
    m = len(pts)
    nv = 2 * n + m
    A, b = [], []
    A.append([1] * n + [-1] * n + [0] * m)
    b.append(0)
    for k, s in enumerate(pts):
        A.append(list(s) + [-v for v in s] + [-int(j == k) for j in range(m)])
        b.append(1)
    x = feasible_point(A, b, nv)
    if x is None:
        return None
    return OnePS.from_rationals([x[i] - x[n + i] for i in range(n)])


def _convex_lp(pts, n, strict=False):
    m = len(pts)
    A = [[s[i] for s in pts] for i in range(n)]
    if strict:
        # c = 1 + y with y >= 0
        b = [-sum((s[i] for s in pts), Fraction(0)) for i in range(n)]
        y = feasible_point(A, b, m)
        if y is None:
            return None
        c = [1 + v for v in y]
    else:
        A.append([1] * m)
        b = [0] * n + [1]
        c = feasible_point(A, b, m)
        if c is None:
            return None
    total = sum(c)
    return tuple(Fraction(v) / total for v in c)


def _supporting_lp(pts, n):
    m = len(pts)
    nv = 2 * n + m
    A = [[1] * n + [-1] * n + [0] * m]
    b = [0]
    for k, s in enumerate(pts):
        A.append(list(s) + [-v for v in s] + [-int(j == k) for j in range(m)])
        b.append(0)
    tot = [sum((s[i] for s in pts), Fraction(0)) for i in range(n)]
    A.append(tot + [-v for v in tot] + [0] * m)
    b.append(1)
    x = feasible_point(A, b, nv)
    if x is None:
        return None
    return OnePS.from_rationals([x[i] - x[n + i] for i in range(n)])


def _torus_verdict_line(pts):
    # n = 2: every state point is (t, -t)
    ts = [s[0] for s in pts]
    lo, hi = min(ts), max(ts)
    if lo > 0:
        return StabilityVerdict("unstable", FramedOnePS.diagonal(OnePS((1, -1))))
    if hi < 0:
        return StabilityVerdict("unstable", FramedOnePS.diagonal(OnePS((-1, 1))))
    if lo < 0 < hi:
        P = sum(t for t in ts if t > 0)
        N = -sum(t for t in ts if t < 0)
        c = [N if t > 0 else P if t < 0 else Fraction(1) for t in ts]
        total = sum(c)
        return StabilityVerdict("stable", ConvexWitness(tuple(pts), tuple(v / total for v in c)))
    c = [Fraction(int(t == 0)) for t in ts]
    total = sum(c)
    sup = OnePS((1, -1)) if lo == 0 else OnePS((-1, 1))
    return StabilityVerdict("strictly-semistable", ConvexWitness(tuple(pts), tuple(v / total for v in c), sup))


def torus_verdict(S: StateSet, force_lp: bool = False) -> StabilityVerdict:
    """Decide whether 0 lies outside / on the boundary of / inside conv(S).

    The hull is taken inside the zero-sum hyperplane.  Every certificate is
    re-verified before it is returned.
    """
    pts = tuple(sorted(set(S.points), reverse=True))
    if not pts:
        raise ValueError("empty state")
    n = len(pts[0])
    if n == 2 and not force_lp:
        verdict = _torus_verdict_line(pts)
    elif n == 1:
        verdict = StabilityVerdict("stable", ConvexWitness(pts, (Fraction(1),)))
    else:
        verdict = _torus_verdict_lp(pts, n)
    check_verdict(verdict, pts)
    return verdict


def _torus_verdict_lp(pts, n):
    lam = _separating_lp(pts, n)
    if lam is not None:
        return StabilityVerdict("unstable", FramedOnePS.diagonal(lam))
    if rank_of(pts, n) == n - 1:
        strict = _convex_lp(pts, n, strict=True)
        if strict is not None:
            return StabilityVerdict("stable", ConvexWitness(pts, strict))
        sup = _supporting_lp(pts, n)
    else:
        ker = nullspace(list(pts) + [[1] * n], n)
        sup = OnePS.from_rationals(ker[0])
    combo = _convex_lp(pts, n)
    return StabilityVerdict("strictly-semistable", ConvexWitness(pts, combo, sup))


def check_verdict(verdict: StabilityVerdict, pts) -> None:
    """Raise AssertionError unless the certificate proves the verdict."""
    n = len(pts[0])
    cert = verdict.certificate
    if verdict.status == "unstable":
        lam = cert.oneps
        assert sum(lam.weights) == 0 and min(pair(lam, s) for s in pts) > 0, "bad separating 1-PS"
        return
    if verdict.status in ("stable", "strictly-semistable"):
        used = {p: c for p, c in zip(cert.points, cert.coefficients)}
        assert all(p in pts for p in used), "witness uses foreign points"
        assert all(c >= 0 for c in cert.coefficients) and sum(cert.coefficients) == 1
        for i in range(n):
            assert sum((c * p[i] for p, c in used.items()), Fraction(0)) == 0, "witness does not sum to 0"
        if verdict.status == "stable":
            assert all(c > 0 for c in cert.coefficients) and len(used) == len(set(pts))
            assert n == 1 or rank_of(pts, n) == n - 1
        else:
            sup = cert.supporting
            assert sup is not None and not sup.is_trivial
            assert min(pair(sup, s) for s in pts) == 0
        return
    raise AssertionError(f"cannot check verdict {verdict.status}")


def grid_separator(S: StateSet, bound: int):
    """Exhaustive integer search: a 1-PS with |lam_i| <= bound separating S from 0."""
    pts = set(S.points)
    for lam in all_onepss(S.n, bound):
        if all(pair(lam, s) > 0 for s in pts):
            return lam
    return None


# -- binary forms ----------------------------------------------------------------

def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _deriv(f):
    return _trim([i * f[i] for i in range(1, len(f))])


def _divmod(f, g):
    f = [Fraction(v) for v in f]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and f:
        c = f[-1] / g[-1]
        k = len(f) - len(g)
        q[k] = c
        for i, gv in enumerate(g):
            f[k + i] -= c * gv
        f = _trim(f)
    return _trim(q), f


def _monic(f):
    return [v / f[-1] for v in f]


def _gcd(f, g):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _divmod(f, g)[1]
    return _monic(f) if f else f


def squarefree_decomposition(f):
    """Yun's algorithm: [(a_i, i)] with f = lc * prod a_i^i, a_i squarefree and monic."""
    f = _monic(_trim([Fraction(v) for v in f]))
    out = []
    if len(f) <= 1:
        return out
    a = _gcd(f, _deriv(f))
    b = _divmod(f, a)[0]
    c = _divmod(_deriv(f), a)[0]
    d = _trim([x - y for x, y in zip(c + [0] * len(f), _deriv(b) + [0] * len(f))])
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        db = _deriv(b)
        width = max(len(c), len(db))
        d = _trim([(c[k] if k < len(c) else 0) - (db[k] if k < len(db) else 0) for k in range(width)])
        i += 1
    return out


def _divisors(k):
    k = abs(k)
    out = set()
    i = 1
    while i * i <= k:
        if k % i == 0:
            out.update((i, k // i))
        i += 1
    return out


def rational_roots(f):
    """Rational roots of a univariate polynomial with rational coefficients."""
    f = _trim([Fraction(v) for v in f])
    roots = set()
    while f and f[0] == 0:
        roots.add(Fraction(0))
        f = f[1:]
    if len(f) <= 1:
        return sorted(roots)
    if len(f) == 2:
        roots.add(-f[0] / f[1])
        return sorted(roots)
    den = lcm(*(v.denominator for v in f))
    ints = [int(v * den) for v in f]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r**i for i, c in enumerate(ints)) == 0:
                    roots.add(r)
    return sorted(roots)


@dataclass(frozen=True)
class BinaryVerdict:
    status: str
    degree: int
    max_multiplicity: int
    roots: tuple  # ((a, b), multiplicity): rational points (a : b) where F vanishes
    destabilizer: FramedOnePS | None = None


def binary_oracle(F: Poly) -> BinaryVerdict:
    """Exact SL(2) status of a binary form from root multiplicities."""
    if F.n != 2:
        raise ValueError("binary_oracle needs a form in two variables")
    D = F.homogeneous_degree()
    coeffs = [F.coefficient((i, D - i)) for i in range(D + 1)]  # f(t) = F(t, 1)
    f = _trim(coeffs)
    at_infinity = D - (len(f) - 1)
    mults = [at_infinity] if at_infinity else []
    roots = []
    if at_infinity:
        roots.append(((Fraction(1), Fraction(0)), at_infinity))
    for factor, k in squarefree_decomposition(f):
        mults.append(k)
        for r in rational_roots(factor):
            roots.append(((r, Fraction(1)), k))
    top = max(mults, default=0)
    if 2 * top > D:
        status = "unstable"
    elif 2 * top == D:
        status = "strictly-semistable"
    else:
        status = "stable"
    roots.sort(key=lambda rk: (-rk[1], rk[0]))
    cert = None
    if status == "unstable":
        (a, b), k = roots[0]
        frame, lam = _root_frame(a, b)
        cert = FramedOnePS(frame, lam)
        assert cert.certifies(F)
    return BinaryVerdict(status, D, top, tuple(roots), cert)


def _root_frame(a, b):
    """Frame sending the root (a : b) to a coordinate point, and the weights
    that are positive on forms with a high-multiplicity root there."""
    if b == 0:
        return identity_matrix(2), OnePS((-1, 1))
    r = a / b
    return UpperTriangularChange(2, {(0, 1): r}).matrix(), OnePS((1, -1))


def targeted_frames(F: Poly) -> list:
    """Frames moving each rational root of a binary form to a coordinate point."""
    if F.n != 2:
        return []
    out = []
    for (a, b), _ in binary_oracle(F).roots:
        frame = _root_frame(a, b)[0]
        if frame not in out:
            out.append(frame)
    return out


# -- search ---------------------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    frame_budget: int = 20
    entry_bound: int = 3
    strategy: str = "lp"  # "lp" or "grid"
    grid_bound: int | None = None  # default 2 (d+1) n
    pluecker_cap: int = 20000

    def __post_init__(self):
        if self.frame_budget < 0 or self.entry_bound < 1:
            raise ValueError("budgets must be positive")
        if self.strategy not in ("lp", "grid"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


def random_frame(rng: random.Random, n: int, entry_bound: int) -> Matrix:
    """A permutation composed with a random unipotent upper-triangular change."""
    perm = list(range(n))
    rng.shuffle(perm)
    coeffs = {
        (i, j): Fraction(rng.randint(-entry_bound, entry_bound), rng.randint(1, entry_bound))
        for i in range(n)
        for j in range(i + 1, n)
    }
    return mat_mul(permutation_matrix(perm), UpperTriangularChange(n, coeffs).matrix())


def random_frames(n: int, cfg: SearchConfig) -> list:
    """The identity followed by ``cfg.frame_budget`` seeded random frames."""
    rng = random.Random(cfg.seed)
    return [identity_matrix(n)] + [random_frame(rng, n, cfg.entry_bound) for _ in range(cfg.frame_budget)]


def candidate_frames(F: Poly, cfg: SearchConfig) -> list:
    frames = random_frames(F.n, cfg)
    for M in targeted_frames(F):
        if M not in frames:
            frames.insert(1, M)
    return frames


def _transform(F, M):
    return F if M == identity_matrix(F.n) else linear_substitution(F, M)


def _grid_bound(cfg, n, top):
    return cfg.grid_bound if cfg.grid_bound is not None else 2 * top * n


def find_destabilizer(F: Poly, cfg: SearchConfig = SearchConfig()) -> StabilityVerdict:
    """Search frames for a 1-PS with positive weight on every monomial.

    Never concludes semistability: failure is reported as ``unknown``.
    """
    top = F.homogeneous_degree()
    frames = candidate_frames(F, cfg)
    for M in frames:
        S = form_state(_transform(F, M))
        if cfg.strategy == "grid":
            lam = grid_separator(S, _grid_bound(cfg, F.n, top))
        else:
            v = torus_verdict(S)
            lam = v.certificate.oneps if v.status == "unstable" else None
        if lam is not None:
            cert = FramedOnePS(M, lam)
            assert cert.certifies(F)
            return StabilityVerdict("unstable", cert)
    return StabilityVerdict("unknown", BudgetReport(len(frames), cfg.seed, cfg.entry_bound, cfg.strategy))


@dataclass(frozen=True)
class GradientDestabilizer:
    """``oneps`` destabilizes the gradient point of F(frame x).

    For a degenerate gradient, ``pluecker_weight`` is None and
    ``form_certificate`` destabilizes F itself.
    """

    frame: Matrix
    oneps: OnePS
    pluecker_weight: int | None
    form_certificate: FramedOnePS | None = None


def gradient_torus_verdict(W: GradedSubspace, cfg: SearchConfig = SearchConfig(), top: int | None = None):
    """1-PS destabilizing W in the current frame, or None if the torus cannot."""
    try:
        if cfg.strategy == "grid":
            raise CapExceeded("grid requested")
        v = torus_verdict(grassmannian_state(W, cfg.pluecker_cap))
        return v.certificate.oneps if v.status == "unstable" else None
    except CapExceeded:
        bound = _grid_bound(cfg, W.n, top if top is not None else W.m + 1)
        for lam in all_onepss(W.n, bound):
            if hm_weight(W, lam) > 0:
                return lam
        return None


def find_gradient_destabilizer(F: Poly, cfg: SearchConfig = SearchConfig()) -> StabilityVerdict:
    top = F.homogeneous_degree()
    frames = candidate_frames(F, cfg)
    for M in frames:
        G = _transform(F, M)
        try:
            W = gradient_point(G)
        except DegenerateGradient as exc:
            inner = exc.certificate
            cert = FramedOnePS(mat_mul(M, inner.frame), inner.oneps)
            assert cert.certifies(F)
            return StabilityVerdict("unstable", GradientDestabilizer(M, inner.oneps, None, cert))
        lam = gradient_torus_verdict(W, cfg, top)
        if lam is not None:
            pw = hm_weight(W, lam)
            assert pw > 0
            return StabilityVerdict("unstable", GradientDestabilizer(M, lam, pw))
    return StabilityVerdict("unknown", BudgetReport(len(frames), cfg.seed, cfg.entry_bound, cfg.strategy))


# -- transfer algorithms ----------------------------------------------------------


def align_initials(F: Poly, lam: OnePS) -> UpperTriangularChange:
    """Unipotent change after which the partials have distinct initial monomials.

    Follows the inductive construction: at each step take the next pivot
    monomial X of the gradient point, the smallest unclaimed index j whose
    partial starts with X, and substitute x_j -> x_j - sum_{k>j} c_k x_k to
    clear X from the later partials.
    """
    if not lam.is_sorted:
        raise ValueError(f"1-PS {lam} must have ascending weights")
    n = F.n
    W = gradient_point(F)
    pivots = pivot_set(W, lam).monomials
    total = UpperTriangularChange.identity(n)
    G = F
    claimed = []
    key = lambda m: order_key(lam, m)  # noqa: E731
    for X in pivots:
        partials = gradient(G)
        inits = {j: initial_monomial(lam, partials[j]) for j in range(n) if j not in claimed}
        smallest = min(inits.values(), key=key)
        if smallest != X:
            raise AssertionError(f"expected next initial {X}, found {smallest}")
        j0 = min(j for j, m in inits.items() if m == X)
        lead = partials[j0].coefficient(X)
        cs = {(j0, j): -partials[j].coefficient(X) / lead for j in range(j0 + 1, n)}
        step = UpperTriangularChange(n, cs)
        if not step.is_identity():
            G = apply_substitution(G, step)
            total = total.then(step)
        claimed.append(j0)
    final = [initial_monomial(lam, p) for p in gradient(G)]
    if sorted(final, key=key) != list(pivots):
        raise AssertionError("aligned initials do not match the pivot set")
    return total


@dataclass(frozen=True)
class ForwardCertificate:
    """A destabilizer of F also destabilizes its gradient point."""

    oneps: OnePS
    form_min_weight: int
    partial_min_weights: tuple
    bounds: tuple  # -lambda_i; each partial's weights exceed its bound
    pluecker_weight: int


def transfer_form_to_grad(F: Poly, lam: OnePS) -> ForwardCertificate:
    if not F or min_weight(lam, F) <= 0:
        raise PreconditionFailed(f"{lam} does not destabilize the form")
    W = gradient_point(F)  # DegenerateGradient carries its own certificate
    mins = tuple(min_weight(lam, p) for p in gradient(F))
    bounds = tuple(-w for w in lam.weights)
    if not all(m > b for m, b in zip(mins, bounds)):
        raise AssertionError("partial derivative weight bound violated")
    pw = hm_weight(W, lam)
    if not pw >= sum(mins) > 0:
        raise AssertionError(f"Pluecker weight {pw} below the bound {sum(mins)}")
    return ForwardCertificate(lam, min_weight(lam, F), mins, bounds, pw)


def _sorting_permutation(lam: OnePS):
    """(perm, inv): F(P x) with (P x)_i = x_perm[i] has ascending weights lam[inv[k]]."""
    n = lam.n
    inv = sorted(range(n), key=lambda i: (lam.weights[i], i))
    perm = [0] * n
    for k, i in enumerate(inv):
        perm[i] = k
    return perm, inv


@dataclass(frozen=True)
class BackwardCertificate:
    """From a destabilizer of the gradient point to one of the form.

    ``alignment`` acts in the frame where the weights are ascending; the
    per-variable tuples are indexed by the original variables and refer to
    the aligned form ``F(destabilizer.frame x)``.
    """

    sorted_oneps: OnePS
    alignment: UpperTriangularChange
    initial_weights: tuple
    mu_prime: tuple
    mu: tuple
    functional: tuple  # M(z) = sum functional_i z_i
    min_value: Fraction
    destabilizer: FramedOnePS
    mode: str = "aligned"  # or "degenerate"


def _aligned_setup(F, lam):
    n = F.n
    perm, inv = _sorting_permutation(lam)
    P = permutation_matrix(perm)
    lam_s = OnePS(tuple(lam.weights[inv[k]] for k in range(n)))
    FP = _transform(F, P)
    U = align_initials(FP, lam_s)
    G = apply_substitution(FP, U)
    frame = mat_mul(mat_mul(P, U.matrix()), transpose(P))
    return perm, inv, lam_s, U, G, frame


def transfer_grad_to_form(F: Poly, lam: OnePS) -> BackwardCertificate:
    """Turn a 1-PS destabilizing the gradient point into one destabilizing F."""
    n = F.n
    d = F.homogeneous_degree() - 1
    try:
        gradient_point(F)
    except DegenerateGradient as exc:
        cert = exc.certificate
        return BackwardCertificate(lam, UpperTriangularChange.identity(n), (), (), (), (),
                                   Fraction(cert.min_weight(F)), cert, "degenerate")
    perm, inv, lam_s, U, G, frame = _aligned_setup(F, lam)
    W = gradient_point(G)
    if hm_weight(W, lam_s) <= 0:
        raise PreconditionFailed(f"{lam} does not destabilize the gradient point")
    inits = [initial_monomial(lam_s, p) for p in gradient(G)]
    w = [weight(lam_s, m) for m in inits]
    wbar = Fraction(sum(w), n)
    mu_prime = [wi - wbar for wi in w]
    mu = [mp + li for mp, li in zip(mu_prime, lam_s.weights)]
    for z in G.terms:
        L = weight(lam_s, z)
        if not all(z[i] == 0 or L > mu[i] for i in range(n)):
            raise AssertionError(f"support point {z} violates the shifted bounds")
    functional = [(d + 1) * li - mi for li, mi in zip(lam_s.weights, mu)]
    values = [sum((c * zi for c, zi in zip(functional, z)), Fraction(0)) for z in G.terms]
    if min(values) <= 0:
        raise AssertionError("linear functional is not positive on the support")
    back = lambda v: tuple(v[perm[i]] for i in range(n))  # noqa: E731
    cert = FramedOnePS(frame, OnePS(back(OnePS.from_rationals(functional).weights)))
    if not cert.certifies(F):
        raise AssertionError("backward transfer certificate failed to verify")
    return BackwardCertificate(lam_s, U, back(w), back(mu_prime), back(mu),
                               back(functional), min(values), cert)


@dataclass(frozen=True)
class BoundaryReport:
    """Non-strict run for a 1-PS with zero Pluecker weight on the gradient point."""

    sorted_oneps: OnePS
    mu_prime: tuple  # indexed by the original variables
    functional: tuple
    functional_is_zero: bool
    frame: Matrix
    blocks: tuple | None  # variable blocks of F(frame x) when the functional vanishes
    supporting: OnePS | None  # nonzero weights >= 0 on F(frame x): F is not stable


def boundary_analysis(F: Poly, lam: OnePS) -> BoundaryReport:
    n = F.n
    d = F.homogeneous_degree() - 1
    perm, inv, lam_s, U, G, frame = _aligned_setup(F, lam)
    if hm_weight(gradient_point(G), lam_s) != 0:
        raise PreconditionFailed(f"{lam} is not a boundary 1-PS for the gradient point")
    w = [weight(lam_s, initial_monomial(lam_s, p)) for p in gradient(G)]
    wbar = Fraction(sum(w), n)
    mu_prime = tuple(wi - wbar for wi in w)
    functional = tuple(d * li - mp for li, mp in zip(lam_s.weights, mu_prime))
    values = [sum((c * zi for c, zi in zip(functional, z)), Fraction(0)) for z in G.terms]
    if min(values) < 0:
        raise AssertionError("boundary functional is negative on the support")
    zero = not any(functional)
    blocks = supporting = None
    if zero:
        ws = lam_s.weights
        r = next(k for k in range(n) if all(v == ws[k] for v in ws[k:]))
        if r > 0:
            low, high = set(range(r)), set(range(r, n))
            for z in G.terms:
                used = {i for i, e in enumerate(z) if e}
                if used & low and used & high:
                    raise AssertionError("aligned form mixes the weight blocks")
            blocks = (tuple(sorted(inv[k] for k in low)), tuple(sorted(inv[k] for k in high)))
    else:
        nu = OnePS.from_rationals(functional).weights
        supporting = OnePS(tuple(nu[perm[i]] for i in range(n)))
    back = lambda v: tuple(v[perm[i]] for i in range(n))  # noqa: E731
    return BoundaryReport(lam_s, back(mu_prime), back(functional), zero, frame, blocks, supporting)


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple
    fixing: OnePS | None = None

    @property
    def nontrivial(self) -> bool:
        return len(self.blocks) > 1


def disjoint_decomposition(F: Poly) -> Decomposition:
    """Connected components of the variables, joined when they share a monomial."""
    n = F.n
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for z in F.terms:
        used = [i for i, e in enumerate(z) if e]
        for i in used[1:]:
            a, b = find(used[0]), find(i)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    blocks = tuple(sorted(tuple(g) for g in groups.values()))
    fixing = None
    if len(blocks) > 1:
        first = set(blocks[0])
        r = len(first)
        fixing = OnePS(tuple(-(n - r) if i in first else r for i in range(n)))
    return Decomposition(blocks, fixing)
