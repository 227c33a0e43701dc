"""
Partially unramified Brauer groups of BG.

The algebraic part is H^1(Gamma, Picorb_C). The geometric part consists of the
classes in H^2(G, Q/Z) whose lifts commute on every pair (gamma, h) with gamma
in a marked class and h in its centralizer. A geometric class counts once it
descends: its central extension carries a marking and a compatible Galois action.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .cohomology import (H2, CohomologyError, FinAbGroup, H1Result, TwoCocycle, abelian_quotient,
                         h1_lattice, h2_qz_group, h2_trivial, solve_mod, _integer_kernel)
from .galois import GaloisDatum, act_on_character, refine_cyclotomic
from .groups import FiniteGroup
from .picorb import PicorbLattice, age, picorb_lattice

log = logging.getLogger(__name__)


# central extensions given by a cocycle

class CocycleExtension:
    """E = Z/n x G with (a, g)(b, h) = (a + b + f(g, h), gh)."""

    def __init__(self, G: FiniteGroup, f: TwoCocycle):
        self.G, self.f, self.n = G, f, f.n

    def mul(self, x, y):
        (a, g), (b, h) = x, y
        return ((a + b + self.f(g, h)) % self.n, self.G.mul(g, h))

    def inv(self, x):
        a, g = x
        gi = self.G.inv(g)
        return ((-a - self.f(g, gi)) % self.n, gi)

    def pow(self, x, k: int):
        r = (0, self.G.identity)
        for _ in range(k):
            r = self.mul(r, x)
        return r

    def conj(self, x, y):
        return self.mul(self.mul(x, y), self.inv(x))

    def index(self, x) -> int:
        return x[1] * self.n + x[0]

    def element(self, i: int):
        return (i % self.n, i // self.n)

    def as_group(self) -> FiniteGroup:
        N = self.G.order * self.n
        table = [[self.index(self.mul(self.element(i), self.element(j))) for j in range(N)] for i in range(N)]
        return FiniteGroup(table, identity=self.index((0, self.G.identity)))


def extension_from_cocycle(G: FiniteGroup, f: TwoCocycle):
    """The extension group, its projection to G, and the kernel elements (in order of Z/n)."""
    X = CocycleExtension(G, f)
    E = X.as_group()
    proj = [X.element(i)[1] for i in range(E.order)]
    kernel = [X.index((a, G.identity)) for a in range(f.n)]
    return E, proj, kernel


def homs_mod(G: FiniteGroup, n: int) -> list[tuple[int, ...]]:
    """All homomorphisms G -> Z/n as value tables."""
    out = []
    for chi in G.characters.characters:
        if all((x * n).denominator == 1 for x in chi):
            out.append(tuple(int(x * n) % n for x in chi))
    return out


# the algebraic part

@dataclass
class AlgebraicBrauer:
    group: FinAbGroup
    lattice: PicorbLattice
    h1: H1Result
    generators: list[list[int]]  # per generator: character index for every Gamma element

    def crossed_hom(self, G: FiniteGroup, coords: Sequence[int]) -> list[int]:
        X = G.characters
        out = [X.trivial()] * len(self.generators[0]) if self.generators else []
        for c, gen in zip(coords, self.generators):
            for _ in range(c):
                out = [X.add(a, b) for a, b in zip(out, gen)]
        return out


def _character_for_vector(G: FiniteGroup, support, vec) -> int:
    cands = [k for k in range(G.characters.order)
             if all(age(G, k, c) == Fraction(v) % 1 for c, v in zip(support, vec))]
    if not cands:
        raise CohomologyError("lattice vector does not come from a character")
    return cands[0]


def algebraic_brauer(datum: GaloisDatum, support: Sequence[int]) -> AlgebraicBrauer:
    G = datum.G
    support = tuple(sorted(support))
    elems = [x for c in support for x in G.classes.classes[c]]
    if len(G.closure(elems)) != G.order:
        log.warning("support does not generate G; the Brauer group need not be finite")
    P = picorb_lattice(datum, support)
    H = h1_lattice(datum.gamma, P.gamma_matrices)
    gens = []
    for coc in H.cocycles:
        gens.append([_character_for_vector(G, support, P.vector(coc[s])) for s in range(datum.gamma.order)])
    return AlgebraicBrauer(H.group, P, H, gens)


# the geometric part

@dataclass
class GeometricBrauer:
    h2: H2 | None
    bicyclic: list[tuple[int, ...]]  # elements of H^2(G, Q/Z) satisfying the bicyclic conditions
    invariant: list[tuple[int, ...]]  # the Gamma-invariant ones among them
    bicyclic_group: FinAbGroup
    invariant_group: FinAbGroup
    upper_bound: int | None = None  # used when H^2 is out of reach: bound on the invariant part
    method: str = "cocycles"


def bicyclic_pairs(G: FiniteGroup, support: Sequence[int]) -> list[tuple[int, int]]:
    pairs = []
    for c in support:
        g = G.classes.reps[c]
        pairs.extend((g, h) for h in G.centralizer(g))
    return pairs


def _element_structure(ambient: FinAbGroup, elements: list[tuple[int, ...]]) -> FinAbGroup:
    """Invariant factors of a subgroup given by its list of elements."""
    if len(elements) <= 1:
        return FinAbGroup(())
    gens: list[tuple[int, ...]] = []
    span = {ambient.zero()}
    for x in elements:
        if x in span:
            continue
        gens.append(x)
        new = set(span)
        frontier = list(span)
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    t = ambient.add(s, g)
                    if t not in new:
                        new.add(t)
                        nxt.append(t)
            frontier = nxt
        span = new
    k, r = len(gens), len(ambient.invariants)
    rows = [[gens[j][i] for j in range(k)] + [ambient.invariants[i] if i == l else 0 for l in range(r)]
            for i in range(r)]
    K = _integer_kernel(rows, k + r)
    rels = [v[:k] for v in K]
    orders = []
    for g in gens:
        o = 1
        while any((o * x) % d for x, d in zip(g, ambient.invariants)):
            o += 1
        orders.append(o)
    inv, _, _ = abelian_quotient(orders, rels)
    return FinAbGroup(inv, gens)


def act_on_cocycle(datum: GaloisDatum, s: int, f: TwoCocycle) -> TwoCocycle:
    """(sigma f)(g, h) = cyc(sigma) f(sigma^-1 g, sigma^-1 h)."""
    inv = datum.action[datum.gamma.inv(s)]
    u = datum.cyc[s]
    n = f.n
    G = datum.G
    return TwoCocycle(n, tuple(tuple((u * f(inv[g], inv[h])) % n for h in range(G.order))
                               for g in range(G.order)))


def geometric_brauer(datum: GaloisDatum, support: Sequence[int]) -> GeometricBrauer:
    G = datum.G
    try:
        H = h2_qz_group(G)
    except CohomologyError:
        return _geometric_sylow_bound(datum, support)
    amb = H.group
    pairs = bicyclic_pairs(G, support)
    n = H.n
    vecs = [[(g(a, b) - g(b, a)) % n for a, b in pairs] for g in H.generators]
    elems = amb.elements()
    bic = [x for x in elems if all(sum(c * v[i] for c, v in zip(x, vecs)) % n == 0 for i in range(len(pairs)))]
    if amb.exponent > 1 and datum.cyc_modulus % amb.exponent:
        raise CohomologyError("Galois action on H^2 needs cyc modulo exp(H^2); refine the datum first")
    gact = {}
    for s in datum.gamma.generators:
        gact[s] = [H.classify(act_on_cocycle(datum, s, g)) for g in H.generators]

    def act(s, x):
        out = amb.zero()
        for c, img in zip(x, gact[s]):
            for _ in range(c):
                out = amb.add(out, img)
        return out

    inv = [x for x in bic if all(act(s, x) == x for s in gact)]
    return GeometricBrauer(H, bic, inv, _element_structure(amb, bic), _element_structure(amb, inv))


def sylow_subgroup(G: FiniteGroup, p: int) -> tuple[int, ...]:
    cur = (G.identity,)
    for x in range(G.order):
        o = G.element_orders[x]
        if o == 1 or o != p ** _vp(o, p):
            continue
        if x in cur:
            continue
        S = G.closure(cur + (x,))
        if len(S) == p ** _vp(len(S), p):
            cur = S
    return cur


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _geometric_sylow_bound(datum: GaloisDatum, support: Sequence[int]) -> GeometricBrauer:
    """Bound the geometric part through Sylow subgroups.

    The p-part of H^2(G, Q/Z) restricts injectively to a Sylow p-subgroup P, landing in
    classes invariant under N_G(P) that satisfy the bicyclic conditions inside P."""
    G = datum.G
    from sympy import primefactors
    bound = 1
    sup_elems = {x for c in support for x in G.classes.classes[c]}
    for p in primefactors(G.order):
        P = sylow_subgroup(G, p)
        sub = G.subgroup(P)
        Pg = sub.group
        if len(Pg.generators) <= 1:
            continue
        H = h2_qz_group(Pg)
        if H.group.order == 1:
            continue
        pos = {x: i for i, x in enumerate(P)}
        pairs = []
        for gi, g in enumerate(P):
            if g in sup_elems:
                pairs.extend((gi, pos[h]) for h in P if G.mul(g, h) == G.mul(h, g))
        n = H.n
        vecs = [[(f(a, b) - f(b, a)) % n for a, b in pairs] for f in H.generators]
        normalizer = [x for x in range(G.order) if all(G.conj(x, g) in pos for g in P)]
        imgs = {}
        for x in normalizer:
            xi = G.inv(x)
            perm = [pos[G.conj(xi, g)] for g in P]
            imgs[x] = [H.classify(TwoCocycle(n, tuple(tuple(f(perm[a], perm[b]) for b in range(len(P)))
                                                      for a in range(len(P))))) for f in H.generators]
        amb = H.group
        cnt = 0
        for y in amb.elements():
            if any(sum(c * v[i] for c, v in zip(y, vecs)) % n for i in range(len(pairs))):
                continue
            ok = True
            for x, im in imgs.items():
                z = amb.zero()
                for c, img in zip(y, im):
                    for _ in range(c):
                        z = amb.add(z, img)
                if z != y:
                    ok = False
                    break
            cnt += ok
        bound *= cnt
    empty = FinAbGroup(())
    if bound == 1:
        return GeometricBrauer(None, [()], [()], empty, empty, upper_bound=1, method="sylow")
    return GeometricBrauer(None, [], [], empty, empty, upper_bound=bound, method="sylow")


# descent

@dataclass
class Descent:
    """A geometric class realised by a marked central extension with Galois action."""

    coords: tuple[int, ...]  # class in H^2(G, Q/Z)
    f: TwoCocycle
    h: list[tuple[int, ...]]  # per Gamma element: theta_s(a, g) = (cyc(s) a + h_s(g), s(g))
    marking: dict[int, int]  # support class -> a, the marked lift of the class representative
    datum: GaloisDatum | None = field(default=None, repr=False, compare=False)  # where h is defined

    @property
    def n(self) -> int:
        return self.f.n


@dataclass
class MarkedCentralExtension:
    E: FiniteGroup
    n: int
    kernel: list[int]
    projection: list[int]
    marking: list[int]
    galois_action: list[list[int]]

    @property
    def description(self) -> str:
        return f"extension order {self.E.order} kernel {self.n}"


class _Shifter:
    def __init__(self, datum: GaloisDatum, f: TwoCocycle):
        self.datum, self.X, self.n = datum, CocycleExtension(datum.G, f), f.n
        G = datum.G
        self.expE = datum.G.exponent * f.n
        self.to_rep = [0] * G.order
        for cl in G.classes.classes:
            r = cl[0]
            for x in range(G.order):
                g = G.conj(G.inv(x), r)  # x^-1 r x
                self.to_rep[g] = x  # x g x^-1 = r

    def apply(self, s: int, h: Sequence[int], x):
        a, g = x
        u = self.datum.cyc[s] % self.n
        return ((u * a + h[g]) % self.n, self.datum.action[s][g])

    def shift(self, s: int, h: Sequence[int], g: int, a: int) -> tuple[int, int]:
        """Image of the lift (a, g) under sigma acting on E(-1), moved to its class representative."""
        G = self.datum.G
        t = self.apply(s, h, (a, g))
        cm = self.datum.cyc[s] % self.expE
        u = pow(cm, -1, self.expE)
        b, g2 = self.X.pow(t, u)
        x = self.to_rep[g2]
        a2, r = self.X.conj((0, x), (b, g2))
        return G.classes.class_of[r], a2


def _solve_lift(datum: GaloisDatum, f: TwoCocycle, s: int) -> tuple[int, ...] | None:
    """h with delta h = cyc(s) f - f o sigma, so that theta_s is a homomorphism of E."""
    G = datum.G
    n = f.n
    N = G.order
    alpha = datum.action[s]
    u = datum.cyc[s] % n
    cols = []
    for k in range(N):
        cols.append([(g == k) + (h == k) - (G.mul(g, h) == k) for g in range(N) for h in range(N)])
    rhs = [(u * f(g, h) - f(alpha[g], alpha[h])) % n for g in range(N) for h in range(N)]
    sol = solve_mod(np.array(cols, dtype=np.int64).T, rhs, n)
    return None if sol is None else tuple(int(x) for x in sol)


def _extend_action(datum: GaloisDatum, n: int, gen_h: dict[int, tuple[int, ...]]) -> list | None:
    Gm, G = datum.gamma, datum.G
    H: list = [None] * Gm.order
    H[Gm.identity] = tuple(0 for _ in range(G.order))

    def compose(x, s):
        # h_{xs}(g) = cyc_x h_s(g) + h_x(s(g))
        ux = datum.cyc[x] % n
        hs, hx, al = gen_h[s], H[x], datum.action[s]
        return tuple((ux * hs[g] + hx[al[g]]) % n for g in range(G.order))

    frontier = [Gm.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gen_h:
                y = Gm.mul(x, s)
                if H[y] is None:
                    H[y] = compose(x, s)
                    nxt.append(y)
        frontier = nxt
    for x in range(Gm.order):
        for s in gen_h:
            if H[Gm.mul(x, s)] != compose(x, s):
                return None
    return H


def marking_descent_search(datum: GaloisDatum, f: TwoCocycle, support: Sequence[int],
                           coords: tuple[int, ...] = ()) -> Descent | None:
    """Search for a marking of E_f over the support and a compatible Galois action."""
    G, n = datum.G, f.n
    if datum.cyc_modulus % (n * G.exponent):
        datum = refine_cyclotomic(datum, n * G.exponent)
    for c in support:
        g = G.classes.reps[c]
        if any((f(g, x) - f(x, g)) % n for x in G.centralizer(g)):
            return None
    gens = list(datum.gamma.generators)
    base = {}
    for s in gens:
        h = _solve_lift(datum, f, s)
        if h is None:
            return None
        base[s] = h
    homs = homs_mod(G, n)
    sh = _Shifter(datum, f)
    tcs = datum.classes
    orbits = tcs.orbits_of(support)
    for choice in product(homs, repeat=len(gens)):
        gen_h = {s: tuple((x + y) % n for x, y in zip(base[s], chi)) for s, chi in zip(gens, choice)}
        H = _extend_action(datum, n, gen_h)
        if H is None:
            continue
        marking = {}
        for orb in orbits:
            c0 = orb[0]
            g0 = G.classes.reps[c0]
            found = None
            for a0 in range(n):
                assign = {}
                ok = True
                for s in range(datum.gamma.order):
                    c1, a1 = sh.shift(s, H[s], g0, a0)
                    if assign.setdefault(c1, a1) != a1:
                        ok = False
                        break
                if ok:
                    found = assign
                    break
            if found is None:
                marking = None
                break
            marking.update(found)
        if marking is not None:
            return Descent(coords, f, H, marking, datum)
    return None


def certificate(datum: GaloisDatum, d: Descent) -> MarkedCentralExtension:
    """E_f with its marking and Galois action, over the datum the descent was found on."""
    if len(d.h) != datum.gamma.order and d.datum is not None:
        datum = d.datum
    G, f, n = datum.G, d.f, d.n
    X = CocycleExtension(G, f)
    E, proj, kernel = extension_from_cocycle(G, f)
    marking = []
    for c, a in d.marking.items():
        r = G.classes.reps[c]
        marking.extend(sorted({X.index(X.conj(X.element(y), (a, r))) for y in range(E.order)}))
    acts = []
    for s in range(len(d.h)):
        u = datum.cyc[s] % n
        acts.append([X.index(((u * a + d.h[s][g]) % n, datum.action[s][g]))
                     for a, g in (X.element(i) for i in range(E.order))])
    return MarkedCentralExtension(E, n, kernel, proj, sorted(marking), acts)


def verify_certificate(datum: GaloisDatum, cert: MarkedCentralExtension, support: Sequence[int]) -> bool:
    """Check the defining properties of a marked central extension with Galois action."""
    E, G = cert.E, datum.G
    ker = set(cert.kernel)
    if {x for x in range(E.order) if cert.projection[x] == G.identity} != ker:
        return False
    if any(E.mul(k, x) != E.mul(x, k) for k in ker for x in range(E.order)):
        return False
    marked_G = sorted(x for c in support for x in G.classes.classes[c])
    if sorted(cert.projection[x] for x in cert.marking) != marked_G:
        return False
    mk = set(cert.marking)
    if any(E.conj(x, m) not in mk for x in range(E.order) for m in mk):
        return False
    for s, th in enumerate(cert.galois_action):
        if len(set(th)) != E.order:
            return False
        if any(th[E.mul(x, y)] != E.mul(th[x], th[y]) for x in range(E.order) for y in E.generators):
            return False
        if any(cert.projection[th[x]] != datum.action[s][cert.projection[x]] for x in range(E.order)):
            return False
    return True


# residues

@dataclass
class Residue:
    kind: str  # "trivial", "character" or "geometric"
    modulus: int = 1
    table: dict[int, Fraction | None] = field(default_factory=dict)

    def value(self, p: int) -> Fraction | None:
        """Residue character at Frob_p, or None when Frob_p does not fix the class."""
        if self.kind == "trivial":
            return Fraction(0)
        if self.kind == "geometric":
            return None
        return self.table[p % self.modulus]

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "character":
            d["modulus"] = self.modulus
            d["table"] = {str(r): (None if v is None else str(v)) for r, v in sorted(self.table.items())}
        return d


@dataclass
class BrauerElement:
    label: str
    algebraic: tuple[int, ...]
    geometric: tuple[int, ...]
    chi: list[int] | None  # algebraic crossed hom, character index per Gamma element
    descent: Descent | None

    @property
    def is_zero(self) -> bool:
        return not any(self.algebraic) and not any(self.geometric)


def class_character(datum: GaloisDatum, b: BrauerElement, c: int) -> dict[int, Fraction] | None:
    """theta on the stabilizer of class c, or None when the residue is geometrically nontrivial."""
    G = datum.G
    g = G.classes.reps[c]
    theta = {s: Fraction(0) for s in datum.classes.stabilizer(c)}
    if b.descent is not None:
        f, n = b.descent.f, b.descent.n
        if any((f(g, x) - f(x, g)) % n for x in G.centralizer(g)):
            return None
        sh = _Shifter(datum, f)
        for s in theta:
            c1, a1 = sh.shift(s, b.descent.h[s], g, 0)
            assert c1 == c
            theta[s] += Fraction(a1, n)
    if b.chi is not None:
        for s in theta:
            theta[s] += age(G, b.chi[s], c)
    return {s: t % 1 for s, t in theta.items()}


def residue_data(datum: GaloisDatum, b: BrauerElement) -> dict[int, Residue]:
    """Residue per Gamma-orbit, keyed by the orbit's first class."""
    out = {}
    for orb in datum.classes.orbits:
        c = orb[0]
        if c == datum.classes.identity_class:
            continue
        th = class_character(datum, b, c)
        if th is None:
            out[c] = Residue("geometric")
        elif all(v == 0 for v in th.values()):
            out[c] = Residue("trivial")
        else:
            N = datum.conductor
            table = {}
            for r in range(N):
                if gcd(r, N) == 1:
                    table[r] = th.get(datum.frob[r])
            out[c] = Residue("character", N, table)
    return out


def residue_at(datum: GaloisDatum, b: BrauerElement, c: int, frob: int) -> complex | int:
    """chi_v(c): 0 if geometrically nontrivial, else exp(2 pi i theta(Frob))."""
    th = class_character(datum, b, c)
    if th is None:
        return 0
    return th[frob]


def real_invariant(datum: GaloisDatum, b: BrauerElement, place, g: int) -> Fraction:
    """Local invariant of b at a real point sending complex conjugation to g."""
    G = datum.G
    cj = place.conj
    inv = Fraction(0)
    if b.chi is not None:
        X = G.characters
        chi = act_on_character(datum, cj, X.characters[b.chi[cj]])
        inv += chi[g]
    if b.descent is not None:
        f, n = b.descent.f, b.descent.n
        ag = datum.action[cj][g]
        k = (b.descent.h[cj][g] + f(g, ag)) % n
        if k:
            if 2 * k != n:
                raise CohomologyError("unexpected real obstruction")
            inv += Fraction(1, 2)
    return inv % 1


# the report

@dataclass
class BrauerReport:
    datum: GaloisDatum  # refined so that every descent is defined over it
    support: tuple[int, ...]
    algebraic: AlgebraicBrauer
    geometric: GeometricBrauer
    descents: list[Descent]
    excluded: list[tuple[int, ...]]
    undecided: list[tuple[int, ...]]
    elements: list[BrauerElement]

    @property
    def exact(self) -> bool:
        return not self.undecided and self.geometric.upper_bound in (None, 1)

    @property
    def order_bounds(self) -> tuple[int, int]:
        lo = self.algebraic.group.order * (len(self.descents) + 1)
        if self.geometric.upper_bound is not None:
            return lo, self.algebraic.group.order * self.geometric.upper_bound
        return lo, lo + self.algebraic.group.order * len(self.undecided)

    @property
    def order(self) -> int | None:
        lo, hi = self.order_bounds
        return lo if lo == hi else None

    @property
    def total_group(self) -> FinAbGroup:
        """Structure when one of the two parts is trivial (so no extension problem arises)."""
        alg = self.algebraic.group
        if not self.descents:
            return alg
        geo_elems = [d.coords for d in self.descents] + [self.geometric.h2.group.zero()]
        geo = _element_structure(self.geometric.h2.group, geo_elems)
        if alg.order == 1:
            return geo
        return FinAbGroup(tuple(sorted(alg.invariants + geo.invariants)))

    def generator_descriptions(self) -> list[str]:
        out = []
        G = self.datum.G
        for i, _ in enumerate(self.algebraic.generators):
            out.append(f"algebraic crossed homomorphism #{i + 1}")
        for d in self.descents:
            out.append(f"extension order {G.order * d.n} kernel {d.n}")
        return out

    def to_json(self) -> dict:
        lo, hi = self.order_bounds
        res = {}
        G = self.datum.G
        for b in self.elements:
            if b.is_zero:
                continue
            res[b.label] = {G.label(G.classes.reps[c]): r.to_json()
                            for c, r in residue_data(self.datum, b).items()}
        return {
            "support": [G.label(G.classes.reps[c]) for c in self.support],
            "algebraic": {"invariants": list(self.algebraic.group.invariants)},
            "geometric": {
                "bicyclic": list(self.geometric.bicyclic_group.invariants),
                "invariant": list(self.geometric.invariant_group.invariants),
                "method": self.geometric.method,
                "upper_bound": self.geometric.upper_bound,
            },
            "order": self.order if self.order is not None else {"bounded_in": [lo, hi]},
            "invariants": list(self.total_group.invariants) if self.order is not None else None,
            "generators": self.generator_descriptions(),
            "residues": res,
        }


def _descend_class(datum: GaloisDatum, H: H2, x: tuple[int, ...], support) -> Descent | None:
    """Try every Z/d representative of the class x (d its order)."""
    amb = H.group
    d = 1
    while any((d * c) % m for c, m in zip(x, amb.invariants)):
        d += 1
    G = datum.G
    Hd = h2_trivial(G, d)
    scale = G.order // d
    for y in Hd.group.elements():
        f = Hd.element(y)
        if H.classify(f.scale(scale, G.order)) != x:
            continue
        dsc = marking_descent_search(datum, f, support, x)
        if dsc is not None:
            return dsc
    return None


def brauer_report(datum: GaloisDatum, support: Sequence[int]) -> BrauerReport:
    G = datum.G
    support = tuple(sorted(support))
    geo0 = None
    try:
        H = h2_qz_group(G)
        ex = H.group.exponent
    except CohomologyError:
        H, ex = None, 1
    if ex > 1:
        datum = refine_cyclotomic(datum, ex * G.exponent)
    geo = geometric_brauer(datum, support) if geo0 is None else geo0
    alg = algebraic_brauer(datum, support)
    descents, excluded, undecided = [], [], []
    if geo.h2 is not None:
        for x in geo.invariant:
            if not any(x):
                continue
            dsc = _descend_class(datum, geo.h2, x, support)
            if dsc is None:
                excluded.append(x)
            else:
                descents.append(dsc)
        if descents:
            m = lcm(*[d.n for d in descents]) * G.exponent
            if datum.cyc_modulus % m:
                # descents were found on a refinement; recompute them there for uniform residues
                datum = refine_cyclotomic(datum, m)
                alg = algebraic_brauer(datum, support)
                descents = [_descend_class(datum, geo.h2, d.coords, support) for d in descents]
    elements = []
    alg_elems = alg.group.elements()
    geo_list = [None] + descents
    for a in alg_elems:
        chi = alg.crossed_hom(G, a) if alg.generators else None
        for dsc in geo_list:
            gc = dsc.coords if dsc is not None else (geo.h2.group.zero() if geo.h2 is not None else ())
            label = _element_label(a, gc)
            elements.append(BrauerElement(label, tuple(a), tuple(gc), chi, dsc))
    return BrauerReport(datum, support, alg, geo, descents, excluded, undecided, elements)


def _element_label(a, g) -> str:
    parts = []
    if any(a):
        parts.append("alg" + ",".join(map(str, a)))
    if any(g):
        parts.append("geo" + ",".join(map(str, g)))
    return "+".join(parts) or "0"
