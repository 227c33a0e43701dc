"""
Weight functions, orbifold line bundles and their invariants.

A bundle is a rational character chi together with a Gamma-invariant weight
w on conjugacy classes with w(c) = age(chi, c) mod Z on its support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from sympy import Matrix, Rational

from .cohomology import hermite_rows
from .galois import GaloisDatum
from .groups import FiniteGroup, Perm


class BundleError(ValueError):
    pass


def age(G: FiniteGroup, chi: int | Sequence[Fraction], c: int) -> Fraction:
    """chi on the class representative, as an element of [0, 1)."""
    table = G.characters.characters[chi] if isinstance(chi, int) else chi
    return Fraction(table[G.classes.reps[c]]) % 1


@dataclass(frozen=True)
class WeightFunction:
    values: tuple[Fraction, ...]  # indexed by class

    def __getitem__(self, c: int) -> Fraction:
        return self.values[c]

    def __len__(self) -> int:
        return len(self.values)


def make_weight(datum: GaloisDatum, values: Sequence) -> WeightFunction:
    tcs = datum.classes
    w = tuple(Fraction(v) for v in values)
    if len(w) != len(tcs):
        raise BundleError("one weight per conjugacy class is required")
    if w[tcs.identity_class] != 0:
        raise BundleError("weight of the identity class must be 0")
    for s, p in enumerate(tcs.perm):
        for c in range(len(w)):
            if w[p[c]] != w[c]:
                raise BundleError(f"weight is not Galois-invariant: class {_rep_label(datum.G, c)} "
                                  f"has weight {w[c]} but its image {_rep_label(datum.G, p[c])} has {w[p[c]]}")
    return WeightFunction(w)


def _rep_label(G: FiniteGroup, c: int) -> str:
    return G.label(G.classes.reps[c])


def builtin_weight(kind: str, datum: GaloisDatum, class_function: Mapping[int, Fraction] | None = None,
                   values: Mapping[int, Fraction] | None = None) -> WeightFunction:
    """disc: n - #orbits; radical: 1 off the identity; artin: psi(1) - mean of psi on <c>;
    explicit: values per class index."""
    G = datum.G
    part = G.classes
    idc = datum.classes.identity_class
    if kind == "disc":
        if G.labels is None or not isinstance(G.labels[0], Perm):
            raise BundleError("disc weight needs a permutation presentation")
        n = G.labels[0].degree
        vals = [n - G.labels[r].num_orbits() for r in part.reps]
    elif kind == "radical":
        vals = [0 if c == idc else 1 for c in range(len(part))]
    elif kind == "artin":
        if class_function is None:
            raise BundleError("artin weight needs a class function")
        psi = [Fraction(class_function[c]) for c in range(len(part))]
        vals = []
        for c, r in enumerate(part.reps):
            o = G.element_orders[r]
            avg = sum((psi[part.class_of[G.power(r, k)]] for k in range(o)), Fraction(0)) / o
            vals.append(psi[idc] - avg)
    elif kind == "explicit":
        if values is None:
            raise BundleError("explicit weight needs values")
        vals = [Fraction(values.get(c, 0)) for c in range(len(part))]
    else:
        raise BundleError(f"unknown weight kind {kind!r}")
    return make_weight(datum, vals)


@dataclass(frozen=True)
class OrbifoldLineBundle:
    datum: GaloisDatum
    chi: int  # index into G.characters
    weight: WeightFunction
    support: tuple[int, ...]

    @property
    def G(self) -> FiniteGroup:
        return self.datum.G

    @property
    def nontrivial(self) -> tuple[int, ...]:
        idc = self.datum.classes.identity_class
        return tuple(c for c in range(len(self.weight)) if c != idc)

    @property
    def is_big(self) -> bool:
        return all(self.weight[c] > 0 for c in self.nontrivial)


def validate_bundle(datum: GaloisDatum, chi: int, w: WeightFunction,
                    support: Sequence[int] | None = None) -> OrbifoldLineBundle:
    tcs = datum.classes
    if support is None:
        support = [c for c in range(len(tcs)) if c != tcs.identity_class]
    support = tuple(sorted(set(support)))
    if tcs.identity_class in support:
        raise BundleError("support must not contain the identity class")
    for p in tcs.perm:
        if {p[c] for c in support} != set(support):
            raise BundleError("support is not Galois-stable")
    if chi not in datum.rational_characters:
        raise BundleError("character is not defined over the base field")
    for c in support:
        a = age(datum.G, chi, c)
        if w[c] % 1 != a:
            raise BundleError(f"age mismatch at class {_rep_label(datum.G, c)}: "
                              f"expected residue {a}, weight {w[c]} has residue {w[c] % 1}")
    return OrbifoldLineBundle(datum, chi, w, support)


def trivial_character(G: FiniteGroup) -> int:
    return G.characters.trivial()


@dataclass
class FujitaReport:
    a: Fraction
    minimal_classes: tuple[int, ...]
    b: int
    balanced: bool
    iitaka_kernel: tuple[int, ...]
    iitaka_group: FiniteGroup
    iitaka_projection: list[int]

    @property
    def kappa(self) -> int:
        return self.iitaka_group.order - 1


def fujita(L: OrbifoldLineBundle) -> FujitaReport:
    if not L.is_big:
        raise BundleError("bundle is not big: some nontrivial class has weight <= 0")
    G = L.G
    nt = L.nontrivial
    if not nt:
        raise BundleError("trivial group has no Fujita invariants")
    wmin = min(L.weight[c] for c in nt)
    M = tuple(c for c in nt if L.weight[c] == wmin)
    b = len(L.datum.classes.orbits_of(M))
    elems = [x for c in M for x in G.classes.classes[c]]
    A = G.closure(elems)
    if not G.is_normal(A):
        raise BundleError("subgroup generated by classes is not normal")
    Q, proj = G.quotient(A)
    return FujitaReport(1 / wmin, M, b, len(A) == G.order, A, Q, proj)


@dataclass
class PicorbLattice:
    support: tuple[int, ...]
    basis: list[list[Fraction]]  # rows, vectors in Q^support
    gamma_matrices: list[list[list[int]]]  # per Gamma element, acting on coordinate columns

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[Fraction]) -> list[int]:
        B = Matrix([[Rational(x.numerator, x.denominator) for x in r] for r in self.basis])
        sol = Matrix([[Rational(Fraction(x).numerator, Fraction(x).denominator) for x in v]]) * B.inv()
        out = []
        for x in sol:
            if not x.is_integer:
                raise BundleError("vector is not in the lattice")
            out.append(int(x))
        return out

    def vector(self, coords: Sequence[int]) -> list[Fraction]:
        return [sum((Fraction(c) * b[j] for c, b in zip(coords, self.basis)), Fraction(0))
                for j in range(len(self.support))]


def picorb_lattice(datum: GaloisDatum, support: Sequence[int]) -> PicorbLattice:
    """Z^support plus the age vectors of all characters of G, with the Gamma-action."""
    G = datum.G
    support = tuple(sorted(support))
    e = G.exponent
    X = G.characters
    gens = [[Fraction(int(i == j)) for j in range(len(support))] for i in range(len(support))]
    for k in X.generators:
        gens.append([age(G, k, c) for c in support])
    scaled = [[int(x * e) for x in r] for r in gens]
    H = hermite_rows(scaled)
    basis = [[Fraction(x, e) for x in r] for r in H]
    if len(basis) != len(support):
        raise BundleError("lattice rank differs from support size")
    B = Matrix([[Rational(x.numerator, x.denominator) for x in r] for r in basis])
    Binv = B.inv()
    pos = {c: i for i, c in enumerate(support)}
    tcs = datum.classes
    mats = []
    for s in range(datum.gamma.order):
        sinv = datum.gamma.inv(s)
        # (sigma w)(c) = w(sigma^-1 c)
        P = Matrix(len(support), len(support), lambda i, j: 1 if pos[tcs.perm[sinv][support[j]]] == i else 0)
        C = B * P * Binv  # row i: sigma(b_i) in basis coordinates
        if any(not x.is_integer for x in C):
            raise BundleError("lattice is not Galois-stable")
        mats.append([[int(C[j, i]) for j in range(len(support))] for i in range(len(support))])
    return PicorbLattice(support, basis, mats)


def effective_cone_constant(L: OrbifoldLineBundle, F: FujitaReport | None = None) -> dict:
    F = F or fujita(L)
    if not F.balanced:
        raise BundleError("effective cone constant is only defined here for balanced bundles")
    nrat = len(L.datum.rational_characters)
    return {
        "alpha": F.a ** F.b / nrat,
        "a_pow_b_minus_1": F.a ** (F.b - 1) / nrat,
        "rational_characters": nrat,
        "b_minus_1_factorial": factorial(F.b - 1),
    }
