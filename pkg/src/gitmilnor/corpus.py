"""Deterministic test corpora of forms and generator sequences."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .errors import GitMilnorError
from .milnor import is_regular_sequence
from .polycore import Poly, gradient, monomials_of_degree

FAMILIES = ("fermat", "random-smooth", "random-sparse", "binary-catalog", "disjoint-sums", "random-regular")
COEFFICIENTS = (-3, -2, -1, 1, 2, 3)
MAX_ATTEMPTS = 1000


class CorpusError(GitMilnorError):
    pass


@dataclass(frozen=True)
class CorpusSpec:
    """Which forms to generate.  ``degrees`` are form degrees d+1; generator
    sequences (gradients or random-regular) have degree d."""

    family: str
    n_values: tuple = (2,)
    degrees: tuple = (3,)
    count: int | None = 10
    seed: int = 0
    density: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if any(n < 1 for n in self.n_values) or any(d < 2 for d in self.degrees):
            raise ValueError("need n >= 1 and form degree >= 2")
        if self.count is not None and self.count < 0:
            raise ValueError("count must be non-negative")


@dataclass(frozen=True)
class CorpusItem:
    index: int
    family: str
    n: int
    degree: int  # form degree d+1
    form: Poly | None
    generators: tuple = field(default=())

    def generator_list(self) -> list:
        return list(self.generators) if self.generators else gradient(self.form)


def _random_form(rng, n, degree, density):
    monos = monomials_of_degree(n, degree)
    while True:
        terms = {a: rng.choice(COEFFICIENTS) for a in monos if rng.random() < density}
        if terms:
            return Poly(n, terms)


def _regular_form(rng, n, degree, density):
    for _ in range(MAX_ATTEMPTS):
        F = _random_form(rng, n, degree, density)
        if is_regular_sequence(gradient(F)):
            return F
    raise CorpusError(f"no form with regular gradient after {MAX_ATTEMPTS} attempts (n={n}, degree={degree})")


def _embed(F: Poly, n: int, offset: int) -> Poly:
    pad = lambda a: (0,) * offset + a + (0,) * (n - offset - F.n)  # noqa: E731
    return Poly(n, {pad(a): c for a, c in F.terms.items()})


def fermat(n: int, degree: int) -> Poly:
    return Poly(n, {tuple(degree * int(i == j) for j in range(n)): 1 for i in range(n)})


def binary_catalog(degree: int, bound: int = 2) -> list:
    """All binary forms with coefficients in [-bound, bound], one per scaling class."""
    out = []
    for cs in product(range(-bound, bound + 1), repeat=degree + 1):
        lead = next((c for c in cs if c), 0)
        if lead <= 0 or gcd(*cs) != 1:
            continue
        out.append(Poly(2, {(degree - i, i): c for i, c in enumerate(cs) if c}))
    return out


def _item(spec: CorpusSpec, index: int, n: int, degree: int) -> CorpusItem:
    rng = random.Random(f"{spec.seed}:{spec.family}:{index}")
    fam = spec.family
    if fam == "fermat":
        return CorpusItem(index, fam, n, degree, fermat(n, degree))
    if fam == "random-smooth":
        return CorpusItem(index, fam, n, degree, _regular_form(rng, n, degree, spec.density or 1.0))
    if fam == "random-sparse":
        return CorpusItem(index, fam, n, degree, _random_form(rng, n, degree, spec.density or 0.3))
    if fam == "disjoint-sums":
        if n < 2:
            raise ValueError("disjoint sums need at least two variables")
        r = rng.randint(1, n - 1)
        G = _regular_form(rng, r, degree, spec.density or 1.0)
        H = _regular_form(rng, n - r, degree, spec.density or 1.0)
        return CorpusItem(index, fam, n, degree, _embed(G, n, 0) + _embed(H, n, r))
    if fam == "random-regular":
        d = degree - 1
        for _ in range(MAX_ATTEMPTS):
            gens = tuple(_random_form(rng, n, d, spec.density or 1.0) for _ in range(n))
            if is_regular_sequence(list(gens)):
                return CorpusItem(index, fam, n, degree, None, gens)
        raise CorpusError(f"no regular sequence after {MAX_ATTEMPTS} attempts (n={n}, d={d})")
    raise AssertionError(fam)


def generate(spec: CorpusSpec) -> list:
    """Items in a fixed order; item i depends only on (seed, family, i)."""
    if spec.family == "binary-catalog":
        items = []
        for degree in spec.degrees:
            for F in binary_catalog(degree):
                items.append(CorpusItem(len(items), spec.family, 2, degree, F))
        if spec.count is not None and spec.count < len(items):
            keep = sorted(random.Random(f"{spec.seed}:catalog").sample(range(len(items)), spec.count))
            items = [CorpusItem(k, it.family, it.n, it.degree, it.form)
                     for k, it in enumerate(items[i] for i in keep)]
        return items
    if spec.family == "fermat" and spec.count is None:
        combos = [(n, d) for n in spec.n_values for d in spec.degrees]
        return [_item(spec, i, n, d) for i, (n, d) in enumerate(combos)]
    combos = [(n, d) for n in spec.n_values for d in spec.degrees]
    return [_item(spec, i, *combos[i % len(combos)]) for i in range(spec.count or 0)]
