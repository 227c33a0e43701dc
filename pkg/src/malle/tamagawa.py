"""
Local Tamagawa densities.

At a good place the density is a sum over Frobenius-fixed twisted classes of
q^(-a w(c)), optionally weighted by the residue character of a Brauer element.
Places dividing |G| or the conductor come from fixtures.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Mapping

from sympy import Matrix, Rational, factorint

from .brauer import BrauerElement, BrauerReport, class_character, real_invariant
from .galois import BadPlaceError, GaloisDatum
from .groups import FiniteGroup, Perm
from .picorb import OrbifoldLineBundle, fujita


@dataclass(frozen=True)
class LocalDensity:
    """A density as a sum of count * exp(2 pi i angle) * q^(-exponent), or a fixed value."""

    place: str
    q: int | None = None
    terms: tuple[tuple[Fraction, Fraction, Fraction], ...] = ()  # (exponent, angle, count)
    fixed: Fraction | float | None = None
    provenance: str = "formula"

    @property
    def exact(self) -> Fraction | None:
        if self.fixed is not None:
            return self.fixed if isinstance(self.fixed, Fraction) else None
        total = Fraction(0)
        for ex, ang, cnt in self.terms:
            if ex.denominator != 1 or ang not in (0, Fraction(1, 2)):
                return None
            sign = 1 if ang == 0 else -1
            total += sign * cnt * Fraction(1, self.q ** int(ex)) if self.q else sign * cnt
        return total

    @property
    def value(self) -> float:
        e = self.exact
        if e is not None:
            return float(e)
        if self.fixed is not None:
            return float(self.fixed)
        z = sum(float(cnt) * cmath.exp(2j * math.pi * float(ang)) * self.q ** (-float(ex))
                for ex, ang, cnt in self.terms)
        return z.real


def _collect(terms) -> tuple:
    acc: dict[tuple[Fraction, Fraction], Fraction] = {}
    for ex, ang, cnt in terms:
        key = (Fraction(ex), Fraction(ang) % 1)
        acc[key] = acc.get(key, Fraction(0)) + Fraction(cnt)
    return tuple(sorted((k[0], k[1], v) for k, v in acc.items() if v))


def _a(L: OrbifoldLineBundle, a: Fraction | None) -> Fraction:
    return a if a is not None else fujita(L).a


def _check_good(datum: GaloisDatum, q: int):
    p = _prime_of(q)
    if datum.G.order % p == 0 or datum.conductor % p == 0:
        raise BadPlaceError(f"q = {q} is not a good place (|G| = {datum.G.order}, conductor {datum.conductor})")
    return p


def _prime_of(q: int) -> int:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    return next(iter(f))


def frobenius_of(datum: GaloisDatum, q: int) -> int:
    """Frobenius of the residue field of size q = p^f, as a Gamma element."""
    p = _prime_of(q)
    f = round(math.log(q, p))
    return datum.gamma.power(datum.frobenius(p), f)


def good_local_density(q: int, frob: int, L: OrbifoldLineBundle, a: Fraction | None = None) -> LocalDensity:
    datum = L.datum
    _check_good(datum, q)
    a = _a(L, a)
    terms = [(L.weight[c] * a, 0, 1) for c in datum.classes.fixed(frob)]
    return LocalDensity(f"p={q}", q, _collect(terms))


def integral_partial_density(q: int, frob: int, L: OrbifoldLineBundle) -> LocalDensity:
    F = fujita(L)
    _check_good(L.datum, q)
    fixed = set(L.datum.classes.fixed(frob))
    m = sum(1 for c in F.minimal_classes if c in fixed)
    return LocalDensity(f"p={q}", q, _collect([(0, 0, 1), (1, 0, m)]))


def brute_force_local(q: int, L: OrbifoldLineBundle, frob: int | None = None,
                      a: Fraction | None = None) -> LocalDensity:
    """Count pairs (gamma, g) with g sigma(gamma) g^-1 = gamma^q, each weighted q^(-a w)/|G|."""
    datum = L.datum
    _check_good(datum, q)
    if frob is None:
        frob = frobenius_of(datum, q)
    a = _a(L, a)
    G = datum.G
    sig = datum.action[frob]
    cls = G.classes.class_of
    terms = []
    for gam in range(G.order):
        target = G.power(gam, q)
        sg = sig[gam]
        n = sum(1 for g in range(G.order) if G.conj(g, sg) == target)
        if n:
            terms.append((L.weight[cls[gam]] * a, 0, Fraction(n, G.order)))
    return LocalDensity(f"p={q}", q, _collect(terms), provenance="brute-force")


def twisted_local_density(q: int, frob: int, L: OrbifoldLineBundle, report: BrauerReport,
                          b: BrauerElement, a: Fraction | None = None) -> LocalDensity:
    """frob is a Gamma element of the report's datum."""
    datum = report.datum
    _check_good(datum, q)
    a = _a(L, a)
    terms = []
    for c in datum.classes.fixed(frob):
        if c == datum.classes.identity_class:
            terms.append((0, 0, 1))
            continue
        th = class_character(datum, b, c)
        if th is None:
            continue
        terms.append((L.weight[c] * a, th[frob], 1))
    return LocalDensity(f"p={q}", q, _collect(terms))


def convergence_factor(q: int, frob: int, L: OrbifoldLineBundle, mode: str = "zeta") -> Fraction:
    """Multiplier making the product converge: (1 - 1/q)^b or det(1 - P/q) on the minimal classes."""
    F = fujita(L)
    if mode == "zeta":
        return (1 - Fraction(1, q)) ** F.b
    if mode == "artin":
        M = F.minimal_classes
        pos = {c: i for i, c in enumerate(M)}
        perm = L.datum.classes.perm[frob]
        P = Matrix(len(M), len(M), lambda i, j: 1 if pos[perm[M[j]]] == i else 0)
        d = (Matrix.eye(len(M)) - P * Rational(1, q)).det()
        return Fraction(int(d.p), int(d.q))
    raise ValueError(f"unknown normalization mode {mode!r}")


# archimedean places

def point_label(G: FiniteGroup, g: int) -> str:
    lab = G.labels[g] if G.labels is not None else None
    if isinstance(lab, Perm):
        ct = [len(c) for c in lab.cycles()]
        twos = sum(1 for x in ct if x == 2)
        ones = lab.degree - 2 * twos
        parts = []
        if ones:
            parts.append(f"R^{ones}")
        if twos:
            parts.append(f"C^{twos}")
        return " ".join(parts)
    return f"class {G.label(G.classes.reps[G.classes.class_of[g]])}"


def real_cocycles(datum: GaloisDatum, conj: int) -> list[int]:
    G = datum.G
    al = datum.action[conj]
    return [g for g in range(G.order) if G.mul(g, al[g]) == G.identity]


def archimedean_density(datum: GaloisDatum, L: OrbifoldLineBundle, place_index: int = 0,
                        heights: Mapping[str, float | Fraction] | None = None,
                        split: bool = False, a: Fraction | None = None,
                        report: BrauerReport | None = None, b: BrauerElement | None = None):
    """(1/|G|) sum over real cocycles of H^(-a), or 1/|G| at a complex place.

    With b, each point is weighted by exp(2 pi i inv(b)). With split, returns a map label -> density."""
    G = datum.G
    place = datum.arch[place_index]
    if place.kind == "complex":
        d = LocalDensity("inf", None, fixed=Fraction(1, G.order))
        return {"C": d} if split else d
    a = _a(L, a)
    heights = heights or {}
    if b is not None:
        datum = report.datum
        place = datum.arch[place_index]
    groups: dict[str, list] = {}
    for g in real_cocycles(datum, place.conj):
        lab = point_label(G, g)
        h = heights.get(lab, 1)
        inv = real_invariant(datum, b, place, g) if b is not None else Fraction(0)
        groups.setdefault(lab, []).append((h, inv))
    out = {}
    for lab, pts in groups.items():
        out[lab] = _arch_value(pts, a, G.order)
    if split:
        return out
    tot = sum((d.fixed for d in out.values()), Fraction(0)) if all(isinstance(d.fixed, Fraction) for d in out.values()) \
        else sum(float(d.fixed) for d in out.values())
    return LocalDensity("inf", None, fixed=tot)


def _arch_value(pts, a, n) -> LocalDensity:
    exact = True
    tot = Fraction(0)
    for h, inv in pts:
        sign = 1 if inv == 0 else -1
        hv = Fraction(1) if h == 1 else (Fraction(h) ** (-a) if Fraction(a).denominator == 1 else None)
        if hv is None or inv not in (0, Fraction(1, 2)):
            exact = False
            break
        tot += sign * hv / n
    if exact:
        return LocalDensity("inf", None, fixed=tot)
    z = sum(cmath.exp(2j * math.pi * float(inv)) * float(h) ** (-float(a)) for h, inv in pts) / n
    return LocalDensity("inf", None, fixed=z.real)


# fixtures for wild places

@dataclass
class HeightSpec:
    bundle: OrbifoldLineBundle
    bad_places: dict[int, dict] = field(default_factory=dict)  # p -> {"plain": x, "twisted": {label: y}, "good": bool}
    arch_heights: dict[int, dict[str, float]] = field(default_factory=dict)

    def check(self):
        datum = self.bundle.datum
        need = set(factorint(datum.G.order)) | set(factorint(datum.conductor))
        need.discard(1)
        missing = [p for p in sorted(need) if p not in self.bad_places]
        if missing:
            raise BadPlaceError(f"no local density supplied at bad places {missing}")


@lru_cache(maxsize=None)
def load_fixtures() -> dict:
    text = resources.files("malle").joinpath("data/fixtures.json").read_text()
    out: dict = {}
    for rec in json.loads(text):
        key = (rec["group"], rec["height"])
        entry = {"plain": Fraction(rec["plain"])}
        entry["twisted"] = {k: Fraction(v) for k, v in rec.get("twisted", {}).items()}
        out.setdefault(key, {})[int(rec["place"])] = entry
    return out


def fixture_densities(group: str, height: str) -> dict[int, dict]:
    return dict(load_fixtures().get((group, height), {}))


# Hilbert symbols

def _squarefree_int(x: Fraction) -> int:
    # same square class: num * den
    x = Fraction(x)
    if x == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    return x.numerator * x.denominator


def _split(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def _legendre(u: int, p: int) -> int:
    return 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, v) -> Fraction:
    """Quadratic Hilbert symbol (a, b)_v as 0 or 1/2; v a prime or 'inf'."""
    a, b = _squarefree_int(Fraction(a)), _squarefree_int(Fraction(b))
    if v in ("inf", math.inf, None):
        return Fraction(1, 2) if a < 0 and b < 0 else Fraction(0)
    p = int(v)
    al, u = _split(a, p)
    be, w = _split(b, p)
    if p != 2:
        e = (al * be * ((p - 1) // 2)) % 2
        s = (-1) ** e * _legendre(u, p) ** be * _legendre(w, p) ** al
        return Fraction(0) if s == 1 else Fraction(1, 2)
    eps = lambda x: ((x - 1) // 2) % 2  # noqa: E731
    omg = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
    e = (eps(u) * eps(w) + al * omg(w) + be * omg(u)) % 2
    return Fraction(e, 2)


def hilbert_places(a, b) -> list:
    """Places where (a, b)_v can be nontrivial: 2, infinity and primes dividing a or b."""
    ps = {2}
    for x in (a, b):
        x = Fraction(x)
        ps |= set(factorint(abs(x.numerator))) | set(factorint(x.denominator))
    ps.discard(1)
    return sorted(ps) + ["inf"]


def hilbert_sum(a, b) -> Fraction:
    return sum((hilbert_symbol(a, b, v) for v in hilbert_places(a, b)), Fraction(0)) % 1


def stickelberger_local_data(d: int) -> list[tuple[object, int, Fraction]]:
    """For Q(sqrt d) with d = 1 mod 4 squarefree: per place (v, local discriminant mod 4, inv_v(-1, chi))."""
    if d % 4 != 1:
        raise ValueError("need d = 1 mod 4 so that the extension is unramified at 2")
    out = []
    for p in sorted(factorint(abs(d))):
        out.append((p, p % 4, hilbert_symbol(-1, d, p)))
    out.append(("inf", 3 if d < 0 else 1, hilbert_symbol(-1, d, "inf")))
    out.append((2, 1, hilbert_symbol(-1, d, 2)))
    return out


def is_local_nth_power(a: int, n: int, p) -> bool:
    """Whether the integer a is an n-th power in Q_p (p prime or 'inf')."""
    if p == "inf":
        return a > 0 or n % 2 == 1
    v, u = _split(a, p)
    if v % n:
        return False
    k = 2 * _split(n, p)[0] + 1
    m = p ** k
    return any(pow(r, n, m) == u % m for r in range(1, m) if r % p)


def grunwald_wang_invariant() -> Fraction:
    """inv_2 of chi_2 cup 16 for the unramified Z/8 character at 2: reduces to (5, 2)_2."""
    return hilbert_symbol(5, 2, 2)
