"""Exact multivariate polynomials over the rationals.

Exponent vectors are plain tuples of non-negative ints. Variables are indexed
from 0 in the Python API; the text form names them ``x1 .. xN`` (with the
aliases ``x, y, z, w`` when N <= 4) and dual variables ``u1 .. uN``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NotHomogeneous, ParseError

ALIASES = ("x", "y", "z", "w")

Matrix = tuple  # tuple of row tuples of Fractions


def exponent_degree(a: Sequence[int]) -> int:
    return sum(a)


def grlex_key(a):
    """Sort key: higher degree first, then lexicographically larger first."""
    return (-sum(a), tuple(-e for e in a))


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, m: int) -> tuple:
    """All exponent vectors of length n and degree m, in descending grlex order."""
    if n == 0:
        return ((),) if m == 0 else ()
    if n == 1:
        return ((m,),)
    out = []
    for first in range(m, -1, -1):
        for rest in monomials_of_degree(n - 1, m - first):
            out.append((first,) + rest)
    return tuple(out)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class Poly:
    """Polynomial with exact rational coefficients in ``n`` variables.

    Instances are treated as immutable; ``terms`` is a read-only view kept in
    descending graded-lexicographic order.
    """

    __slots__ = ("n", "_terms", "_hash")
    _prefix = None

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        if n < 0:
            raise ValueError("number of variables must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise DimensionMismatch(f"exponent {exps} has length {len(exps)}, expected {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.n = n
        self._terms = {k: clean[k] for k in sorted(clean, key=grlex_key) if clean[k]}
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        # trusted constructor: terms already clean and exact
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = {k: terms[k] for k in sorted(terms, key=grlex_key)}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n, c):
        c = _as_fraction(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def monomial(cls, exps, c=1):
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    @classmethod
    def variable(cls, n, i):
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for {n} variables")
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def support(self) -> tuple:
        return tuple(self._terms)

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self._terms == other._terms and self._prefix == other._prefix
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._prefix, self.n, tuple(self._terms.items())))
        return self._hash

    # -- degrees ---------------------------------------------------------
    def degrees(self) -> set:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Total degree; undefined for the zero polynomial."""
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self.degrees())

    def homogeneous_degree(self) -> int:
        if not self._terms:
            raise NotHomogeneous("the zero polynomial has no homogeneous degree")
        degs = self.degrees()
        if len(degs) != 1:
            raise NotHomogeneous(f"polynomial mixes degrees {sorted(degs)}")
        return degs.pop()

    # -- arithmetic ------------------------------------------------------
    def _check(self, other):
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n} variables")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).constant(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return type(self)._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return type(self).zero(self.n)
        return type(self)._raw(self.n, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + ca * cb
        return type(self)._raw(self.n, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = type(self).constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exps, c=1) -> "Poly":
        c = _as_fraction(c)
        return type(self)._raw(
            self.n,
            {tuple(x + y for x, y in zip(a, exps)): v * c for a, v in self._terms.items()} if c else {},
        )

    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for {self.n} variables")
        out = {}
        for a, c in self._terms.items():
            if a[i]:
                b = a[:i] + (a[i] - 1,) + a[i + 1:]
                out[b] = c * a[i]
        return type(self)._raw(self.n, out)

    def content_free(self) -> "Poly":
        """Scale so the leading (grlex) coefficient is 1."""
        if not self._terms:
            return self
        lead = next(iter(self._terms.values()))
        return self.scale(1 / lead)

    # -- text ------------------------------------------------------------
    def variable_names(self):
        if self._prefix is not None:
            return [f"{self._prefix}{i + 1}" for i in range(self.n)]
        if self.n <= len(ALIASES):
            return list(ALIASES[: self.n])
        return [f"x{i + 1}" for i in range(self.n)]

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"{type(self).__name__}({self.n}, {str(self)!r})"


class DualPoly(Poly):
    """A form in the dual variables u_i = d/dx_i."""

    __slots__ = ()
    _prefix = "u"


def format_poly(p: Poly, names=None) -> str:
    if not p:
        return "0"
    names = names or p.variable_names()
    pieces = []
    for exps, c in p.terms.items():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>[a-z]\d*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    return tokens


def _var_index(name, pos, dual):
    prefix = "u" if dual else "x"
    if len(name) == 1 and not dual and name in ALIASES:
        return ALIASES.index(name)
    if name[0] == prefix and len(name) > 1:
        idx = int(name[1:])
        if idx < 1:
            raise ParseError(f"variable index must be >= 1 in {name!r}", pos)
        return idx - 1
    raise ParseError(f"unknown variable {name!r}", pos)


def parse_poly(text: str, n: int | None = None, *, dual: bool = False,
               homogeneous: bool = False) -> Poly:
    """Parse ``x^3 + 3*x^2*y - 1/2*y^3`` style text.

    ``n`` fixes the number of variables; by default it is the largest variable
    index used.  With ``dual=True`` the variables are ``u1..uN`` and a
    :class:`DualPoly` is returned.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    terms = []  # (coefficient, {var: exp})
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, len(text))

    sign = 1
    kind, val, pos = peek()
    if kind == "op" and val in "+-":
        sign = -1 if val == "-" else 1
        i += 1
    while True:
        coef = Fraction(sign)
        powers = {}
        nfactors = 0
        while True:
            kind, val, pos = peek()
            if kind == "num":
                i += 1
                num = Fraction(int(val))
                k2, v2, p2 = peek()
                if k2 == "op" and v2 == "/":
                    i += 1
                    k3, v3, p3 = peek()
                    if k3 != "num":
                        raise ParseError("expected denominator", p3)
                    if int(v3) == 0:
                        raise ParseError("zero denominator", p3)
                    num /= int(v3)
                    i += 1
                k2, v2, p2 = peek()
                if k2 == "op" and v2 == "^":
                    raise ParseError("exponent on a numeric coefficient is not supported", p2)
                coef *= num
            elif kind == "var":
                i += 1
                idx = _var_index(val, pos, dual)
                e = 1
                k2, v2, p2 = peek()
                if k2 == "op" and v2 == "^":
                    i += 1
                    k3, v3, p3 = peek()
                    if k3 != "num":
                        raise ParseError("expected integer exponent", p3)
                    e = int(v3)
                    i += 1
                powers[idx] = powers.get(idx, 0) + e
            else:
                raise ParseError("expected a coefficient or variable", pos)
            nfactors += 1
            kind, val, pos = peek()
            if kind == "op" and val == "*":
                i += 1
                continue
            if kind in ("num", "var"):
                continue  # implicit multiplication
            break
        terms.append((coef, powers))
        kind, val, pos = peek()
        if kind is None:
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            if peek()[0] is None:
                raise ParseError("dangling operator", pos)
            continue
        raise ParseError(f"unexpected token {val!r}", pos)
    used = max((v for _, pw in terms for v in pw), default=-1) + 1
    if n is None:
        n = max(used, 1)
    elif used > n:
        raise ParseError(f"variable index {used} exceeds declared n={n}", 0)
    out = {}
    for coef, pw in terms:
        exps = tuple(pw.get(k, 0) for k in range(n))
        out[exps] = out.get(exps, 0) + coef
    cls = DualPoly if dual else Poly
    p = cls(n, out)
    if homogeneous and p and not p.is_homogeneous():
        raise NotHomogeneous(f"{text!r} is not homogeneous (degrees {sorted(p.degrees())})")
    return p


# -- operations -----------------------------------------------------------------

def partial_derivative(F: Poly, i: int) -> Poly:
    """dF/dx_i with 0-based ``i``."""
    return F.diff(i)


def gradient(F: Poly) -> list:
    return [F.diff(i) for i in range(F.n)]


@dataclass(frozen=True)
class UpperTriangularChange:
    """x_i -> x_i + sum_{j>i} c_ij x_j (unipotent, determinant 1)."""

    n: int
    coefficients: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), c in dict(self.coefficients).items():
            if not (0 <= i < j < self.n):
                raise DimensionMismatch(f"entry ({i}, {j}) is not strictly upper triangular in n={self.n}")
            c = _as_fraction(c)
            if c:
                clean[(i, j)] = c
        object.__setattr__(self, "coefficients", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def identity(cls, n):
        return cls(n, {})

    @classmethod
    def from_matrix(cls, M):
        n = len(M)
        for i in range(n):
            for j in range(n):
                want = 1 if i == j else M[i][j]
                if (j < i and M[i][j]) or M[i][j] != want:
                    raise ValueError("matrix is not unipotent upper triangular")
        return cls(n, {(i, j): M[i][j] for i in range(n) for j in range(i + 1, n)})

    def is_identity(self):
        return not self.coefficients

    def matrix(self) -> Matrix:
        return tuple(
            tuple(Fraction(1) if i == j else self.coefficients.get((i, j), Fraction(0)) for j in range(self.n))
            for i in range(self.n)
        )

    def then(self, other: "UpperTriangularChange") -> "UpperTriangularChange":
        """Composite change: substitute ``self`` first, then ``other``."""
        return UpperTriangularChange.from_matrix(mat_mul(self.matrix(), other.matrix()))

    def __hash__(self):
        return hash((self.n, tuple(self.coefficients.items())))


def identity_matrix(n) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_mul(A, B) -> Matrix:
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return tuple(
        tuple(sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def permutation_matrix(perm) -> Matrix:
    """Matrix P with (P x)_i = x_{perm[i]}."""
    n = len(perm)
    return tuple(tuple(Fraction(int(perm[i] == j)) for j in range(n)) for i in range(n))


def transpose(M) -> Matrix:
    return tuple(zip(*M)) if M else ()


def linear_substitution(F: Poly, M) -> Poly:
    """F(M x): x_i -> sum_j M[i][j] x_j."""
    n = F.n
    if len(M) != n or any(len(row) != n for row in M):
        raise DimensionMismatch(f"substitution matrix must be {n}x{n}")
    images = [Poly(n, {tuple(int(j == k) for k in range(n)): M[i][j] for j in range(n)}) for i in range(n)]
    cls = type(F)
    if not F:
        return cls.zero(n)
    cache = {}

    def power(i, e):
        p = cache.get((i, e))
        if p is None:
            p = images[i] if e == 1 else power(i, e - 1) * images[i]
            cache[(i, e)] = p
        return p

    out = {}
    one = Poly.constant(n, 1)
    for exps, c in F.terms.items():
        term = one
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        for k, v in term.terms.items():
            out[k] = out.get(k, 0) + c * v
    return cls._raw(n, {k: v for k, v in out.items() if v})


def apply_substitution(F: Poly, T: UpperTriangularChange) -> Poly:
    if T.n != F.n:
        raise DimensionMismatch(f"change acts on {T.n} variables, polynomial has {F.n}")
    if T.is_identity():
        return F
    return linear_substitution(F, T.matrix())


def _perm_sign(p):
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(rows):
    """Determinant of a square matrix of polynomials (Leibniz expansion)."""
    n = len(rows)
    total = None
    for p in permutations(range(n)):
        term = None
        for i in range(n):
            entry = rows[i][p[i]]
            if not entry:
                term = None
                break
            term = entry if term is None else term * entry
        else:
            if term is None:
                continue
            term = term if _perm_sign(p) > 0 else -term
            total = term if total is None else total + term
    return total


def hessian(F: Poly) -> Poly:
    """Determinant of the matrix of second partial derivatives."""
    n = F.n
    firsts = gradient(F)
    rows = [[firsts[i].diff(j) for j in range(n)] for i in range(n)]
    det = determinant(rows)
    return det if det is not None else Poly.zero(n)


def exponent_factorial(a) -> int:
    return prod(factorial(e) for e in a)


def polar_pair(A: Poly, F: Poly) -> Fraction:
    """Apply A (as a constant-coefficient differential operator) to F.

    On monomials <u^a, x^b> = a! [a == b].
    """
    if A.n != F.n:
        raise DimensionMismatch(f"{A.n} vs {F.n} variables")
    if A and F and A.homogeneous_degree() != F.homogeneous_degree():
        raise NotHomogeneous("polar pairing needs forms of equal degree")
    total = Fraction(0)
    small, big = (A, F) if len(A) <= len(F) else (F, A)
    for a, c in small.terms.items():
        other = big.coefficient(a)
        if other:
            total += c * other * exponent_factorial(a)
    return total
