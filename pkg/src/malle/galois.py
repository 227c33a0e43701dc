"""
Base-field data: a finite quotient Gamma of the absolute Galois group acting on G,
the cyclotomic character, Frobenius lookup over Q and archimedean places.

G(-1) is identified with G once and for all via a fixed primitive root of unity,
so Gamma acts on conjugacy classes by sigma.[g] = [sigma(g)^(cyc(sigma)^-1)].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Mapping, Sequence

from sympy.functions.combinatorial.numbers import jacobi_symbol

from .groups import ClassPartition, FiniteGroup, Subgroup, direct_product, units_mod


class BadPlaceError(ValueError):
    pass


class GaloisError(ValueError):
    pass


@dataclass(frozen=True)
class ArchPlace:
    kind: str  # "real" or "complex"
    conj: int | None = None  # complex conjugation in Gamma, for real places


class GaloisDatum:
    """Gamma acting on G through automorphisms, with cyclotomic character and Frobenius table.

    action[s] is the automorphism of G (as a list of element indices) for Gamma element s;
    cyc[s] is a unit modulo cyc_modulus, a multiple of exp(G)."""

    def __init__(self, G: FiniteGroup, gamma: FiniteGroup, action: Sequence[Sequence[int]],
                 cyc: Sequence[int], cyc_modulus: int, conductor: int,
                 frob: Mapping[int, int], arch: Sequence[ArchPlace],
                 projection: Sequence[int] | None = None, label: str = ""):
        self.G = G
        self.gamma = gamma
        self.action = [list(a) for a in action]
        self.cyc = [c % cyc_modulus for c in cyc]
        self.cyc_modulus = cyc_modulus
        self.conductor = conductor
        self.frob = dict(frob)
        self.arch = list(arch)
        self.projection = list(projection) if projection is not None else None
        self.label = label
        self._validate()

    def _validate(self):
        G, Gm = self.G, self.gamma
        if self.cyc_modulus % G.exponent:
            raise GaloisError("cyclotomic modulus must be a multiple of exp(G)")
        if len(self.action) != Gm.order or len(self.cyc) != Gm.order:
            raise GaloisError("action and cyc must be given for every element of Gamma")
        for s in range(Gm.order):
            if gcd(self.cyc[s], self.cyc_modulus) != 1:
                raise GaloisError(f"cyc value {self.cyc[s]} is not a unit mod {self.cyc_modulus}")
        for s in Gm.generators or [Gm.identity]:
            for t in range(Gm.order):
                st = Gm.mul(s, t)
                if self.cyc[st] != (self.cyc[s] * self.cyc[t]) % self.cyc_modulus:
                    raise GaloisError("cyc is not a homomorphism")
                a, b = self.action[s], self.action[t]
                if any(self.action[st][g] != a[b[g]] for g in range(G.order)):
                    raise GaloisError("action is not a homomorphism")
        for r, s in self.frob.items():
            if gcd(r, self.conductor) != 1:
                raise GaloisError(f"Frobenius given on residue {r} not coprime to conductor")
            if self.cyc[s] != r % self.cyc_modulus:
                raise GaloisError(f"Frobenius at {r} does not act on roots of unity by {r}")
        if len(self.frob) != sum(1 for r in range(self.conductor) if gcd(r, self.conductor) == 1):
            raise GaloisError("Frobenius table must cover all residues coprime to the conductor")
        if set(self.frob.values()) != set(range(Gm.order)):
            # Chebotarev: every element of Gamma is a Frobenius
            raise GaloisError("Frobenius elements do not exhaust Gamma; the field data are not linearly disjoint")
        for p in self.arch:
            if p.kind == "real" and (p.conj is None or self.cyc[p.conj] != (-1) % self.cyc_modulus):
                raise GaloisError("complex conjugation must act on roots of unity by -1")

    @property
    def e(self) -> int:
        return self.G.exponent

    def frobenius(self, p: int) -> int:
        if gcd(p, self.conductor) != 1:
            raise BadPlaceError(f"p = {p} divides the conductor {self.conductor}; supply a bad-place override")
        return self.frob[p % self.conductor]

    def twist(self, s: int, g: int) -> int:
        """The twisted action on elements: sigma(g)^(cyc(sigma)^-1)."""
        e = self.e
        u = pow(self.cyc[s] % e, -1, e) if e > 1 else 1
        return self.G.power(self.action[s][g], u)

    @cached_property
    def classes(self) -> "TwistedClassSet":
        return twisted_classes(self)

    @cached_property
    def rational_characters(self) -> list[int]:
        return rational_characters(self)


@dataclass(frozen=True)
class TwistedClassSet:
    partition: ClassPartition
    perm: tuple[tuple[int, ...], ...]  # perm[s][c] = index of s.c, for every Gamma element s
    identity_class: int

    def __len__(self) -> int:
        return len(self.partition)

    @cached_property
    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for c in range(len(self.partition)):
            if c in seen:
                continue
            orb = tuple(sorted({p[c] for p in self.perm}))
            seen.update(orb)
            out.append(orb)
        return out

    def orbit_of(self, c: int) -> tuple[int, ...]:
        for o in self.orbits:
            if c in o:
                return o
        raise KeyError(c)

    def stabilizer(self, c: int) -> list[int]:
        return [s for s, p in enumerate(self.perm) if p[c] == c]

    def fixed(self, s: int) -> list[int]:
        return [c for c, d in enumerate(self.perm[s]) if c == d]

    def orbits_of(self, subset) -> list[tuple[int, ...]]:
        sub = set(subset)
        return [o for o in self.orbits if sub & set(o)]


def twisted_classes(datum: GaloisDatum) -> TwistedClassSet:
    G = datum.G
    part = G.classes
    perm = []
    for s in range(datum.gamma.order):
        if gcd(datum.cyc[s], datum.e) != 1:
            raise GaloisError("cyc value not coprime to exp(G)")
        perm.append(tuple(part.class_of[datum.twist(s, c[0])] for c in part.classes))
    for p in perm:
        if sorted(p) != list(range(len(part))):
            raise GaloisError("twisted action does not permute classes")
    idc = part.class_of[G.identity]
    return TwistedClassSet(part, tuple(perm), idc)


def frobenius_fixed_classes(datum: GaloisDatum, p: int) -> list[int]:
    return datum.classes.fixed(datum.frobenius(p))


def act_on_character(datum: GaloisDatum, s: int, chi: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """(sigma chi)(g) = cyc(sigma) * chi(sigma^-1 g)."""
    inv = datum.action[datum.gamma.inv(s)]
    u = datum.cyc[s]
    return tuple((u * chi[inv[g]]) % 1 for g in range(datum.G.order))


def rational_characters(datum: GaloisDatum) -> list[int]:
    """Indices (into G.characters) of the characters fixed by Gamma."""
    X = datum.G.characters
    gens = datum.gamma.generators
    return [i for i, chi in enumerate(X.characters)
            if all(act_on_character(datum, s, chi) == chi for s in gens)]


# constructors

def _frob_table(conductor: int, lookup) -> dict[int, int]:
    return {r: lookup(r) for r in range(conductor) if gcd(r, conductor) == 1}


def constant_datum_over_Q(G: FiniteGroup, modulus: int | None = None) -> GaloisDatum:
    """Constant G over Q: Gamma = (Z/m)^x acting trivially, cyc = identity, conductor m.

    m defaults to exp(G); larger multiples are allowed when more roots of unity are needed."""
    m = modulus or G.exponent
    if m % G.exponent:
        raise GaloisError("modulus must be a multiple of exp(G)")
    gamma, res = units_mod(m)
    ident = list(range(G.order))
    idx = {u: i for i, u in enumerate(res)}
    frob = _frob_table(m, lambda r: idx[r % m] if m > 2 else gamma.identity)
    conj = idx[(-1) % m] if m > 2 else gamma.identity
    cyc = res if m > 2 else [1 % m] * gamma.order
    return GaloisDatum(G, gamma, [ident] * gamma.order, cyc, m, m, frob,
                       [ArchPlace("real", conj)], label="constant-over-Q")


def datum_from_generators(G: FiniteGroup, gamma: FiniteGroup, gens: Sequence[int],
                          action_gens: Sequence[Sequence[int]], cyc_gens: Sequence[int],
                          cyc_modulus: int, conductor: int, frob: Mapping[int, int],
                          arch: Sequence[ArchPlace], label: str = "explicit") -> GaloisDatum:
    """Build a datum from data on generators of Gamma, checking consistency on all relations."""
    comp = lambda a, b: tuple(a[x] for x in b)  # noqa: E731
    ident = tuple(range(G.order))
    acts = gamma.extend_hom(gens, [tuple(a) for a in action_gens], comp, ident)
    if acts is None:
        raise GaloisError("action images are inconsistent with the relations of Gamma")
    cycs = gamma.extend_hom(gens, [c % cyc_modulus for c in cyc_gens],
                            lambda a, b: (a * b) % cyc_modulus, 1 % cyc_modulus)
    if cycs is None:
        raise GaloisError("cyc values are inconsistent with the relations of Gamma")
    return GaloisDatum(G, gamma, acts, cycs, cyc_modulus, conductor, frob, arch, label=label)


def refine_cyclotomic(datum: GaloisDatum, m: int) -> GaloisDatum:
    """Enlarge Gamma so that cyc is defined modulo lcm(cyc_modulus, m).

    Gamma' is the fibre product of Gamma and (Z/m')^x over (Z/cyc_modulus)^x."""
    m2 = lcm(datum.cyc_modulus, m)
    if m2 == datum.cyc_modulus:
        return datum
    _, res = units_mod(m2)
    pairs = [(s, u) for s in range(datum.gamma.order) for u in res
             if u % datum.cyc_modulus == datum.cyc[s]]
    idx = {p: i for i, p in enumerate(pairs)}
    Gm = datum.gamma
    table = [[idx[(Gm.mul(a, b), (u * v) % m2)] for (b, v) in pairs] for (a, u) in pairs]
    gamma2 = FiniteGroup(table, identity=idx[(Gm.identity, 1 % m2)])
    N2 = lcm(datum.conductor, m2)
    frob = _frob_table(N2, lambda r: idx[(datum.frob[r % datum.conductor], r % m2)])
    arch = [ArchPlace(p.kind, idx[(p.conj, (-1) % m2)] if p.kind == "real" else None) for p in datum.arch]
    proj = [s for s, _ in pairs]
    if datum.projection is not None:
        proj = [datum.projection[s] for s in proj]
    return GaloisDatum(datum.G, gamma2, [datum.action[s] for s, _ in pairs], [u for _, u in pairs],
                       m2, N2, frob, arch, projection=proj, label=datum.label)


def quadratic_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt d) for squarefree d != 0, 1."""
    if d in (0, 1):
        raise GaloisError("d must be a non-square")
    return d if d % 4 == 1 else 4 * d


def kronecker(D: int, r: int, N: int) -> int:
    """The quadratic character of discriminant D at a residue r mod N (|D| divides N)."""
    r = r % N
    while r % 2 == 0 or r == 0:
        r += N
    return int(jacobi_symbol(D % r, r)) if r > 1 else 1


def extend_by_quadratic(datum: GaloisDatum, d: int) -> GaloisDatum:
    """Gamma x C2 where the C2 factor is Gal(Q(sqrt d)/Q) and acts trivially on G.

    Gamma x C2 element (s, h) has index 2*s + h."""
    D = quadratic_discriminant(d)
    Gm = datum.gamma
    c2 = FiniteGroup([[0, 1], [1, 0]])
    gamma2 = direct_product(Gm, c2)
    N2 = lcm(datum.conductor, abs(D))
    frob = _frob_table(N2, lambda r: 2 * datum.frob[r % datum.conductor] + (0 if kronecker(D, r, N2) == 1 else 1))
    arch = [ArchPlace(p.kind, 2 * p.conj + (1 if d < 0 else 0) if p.kind == "real" else None) for p in datum.arch]
    n = gamma2.order
    proj = [s // 2 for s in range(n)]
    return GaloisDatum(datum.G, gamma2, [datum.action[s // 2] for s in range(n)],
                       [datum.cyc[s // 2] for s in range(n)], datum.cyc_modulus, N2, frob, arch,
                       projection=proj, label=f"{datum.label}+sqrt({d})")


def inner_twist_datum(datum: GaloisDatum, M: Subgroup, lift: Mapping[int, int]) -> GaloisDatum:
    """Twist the action on a subgroup M by conjugation with lift(sigma).

    lift maps a generating set of Gamma to elements of G with
    lift(sigma) sigma(M) lift(sigma)^-1 = M. The twisted action
    m -> lift(sigma) sigma(m) lift(sigma)^-1 is extended to all of Gamma and
    checked for consistency."""
    G, Gm = datum.G, datum.gamma
    gens = list(lift)
    if len(Gm.closure(gens)) != Gm.order:
        raise GaloisError("lift must be given on a generating set of Gamma")
    Mset = set(M.elements)
    pos = {x: i for i, x in enumerate(M.elements)}
    gens_auts = []
    for s in gens:
        x = lift[s]
        phi = [G.conj(x, datum.action[s][g]) for g in range(G.order)]
        if {phi[m] for m in Mset} != Mset:
            raise GaloisError(f"lift of Gamma element {s} does not normalize M")
        gens_auts.append(tuple(pos[phi[m]] for m in M.elements))
    H = M.group
    comp = lambda a, b: tuple(a[x] for x in b)  # noqa: E731
    acts = Gm.extend_hom(gens, gens_auts, comp, tuple(range(H.order)))
    if acts is None:
        raise GaloisError("twisted action is inconsistent on the relations of Gamma")
    return GaloisDatum(H, Gm, acts, datum.cyc, datum.cyc_modulus, datum.conductor, datum.frob,
                       datum.arch, projection=datum.projection, label=f"{datum.label}/twist")
