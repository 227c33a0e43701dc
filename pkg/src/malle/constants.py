"""
Leading constants as finite sums of Euler products, one per Brauer element.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

from sympy import divisors, factorint, primerange

from .brauer import BrauerElement, BrauerReport, brauer_report
from .galois import GaloisDatum, GaloisError, inner_twist_datum
from .groups import FiniteGroup, Perm
from .picorb import BundleError, FujitaReport, OrbifoldLineBundle, fujita, make_weight, validate_bundle
from .tamagawa import HeightSpec, archimedean_density, class_character


PRIME_BLOCK = 4096


class UnbalancedError(BundleError):
    pass


@dataclass
class EulerProductSpec:
    prefactor: Fraction
    factor: Callable[[int], float]
    skip: frozenset[int] = frozenset()  # primes handled in the prefactor
    label: str = ""


@dataclass
class EulerProductResult:
    value: float
    product: float
    P: int
    last_factor: float
    primes: int


def euler_product(spec: EulerProductSpec, P: int, chunk: int | None = None,
                  threads: int = 1) -> EulerProductResult:
    """prefactor * prod_{p <= P, p not skipped} factor(p), multiplied in ascending prime order.

    With chunk, factor values are computed per block of primes (optionally on several threads)
    and then multiplied strictly left to right, so the result is bit-identical."""
    primes = [p for p in primerange(2, P + 1) if p not in spec.skip]
    size = chunk or max(len(primes), 1)
    blocks = [primes[i:i + size] for i in range(0, len(primes), size)]
    work = lambda blk: [spec.factor(p) for p in blk]  # noqa: E731
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(threads) as ex:
            values = list(ex.map(work, blocks))
    else:
        values = [work(b) for b in blocks]
    prod = 1.0
    last = 1.0
    for vals in values:
        for v in vals:
            prod *= v
            last = v
    return EulerProductResult(float(spec.prefactor) * prod, prod, P, last, len(primes))


# per-prime factors, cached by Frobenius

@dataclass
class _FactorRule:
    """Terms of a local density and convergence data per Frobenius element."""

    terms: dict[int, list[tuple[float, float]]]  # residue mod N -> [(exponent, weight)]
    conv: dict[int, list[float]]  # residue mod N -> coefficients of det(1 - x P) or (1-x)^b
    N: int

    def __call__(self, p: int) -> float:
        r = p % self.N
        v = 0.0
        for ex, wt in self.terms[r]:
            v += wt * p ** (-ex)
        x = 1.0 / p
        c = 0.0
        for k, coef in enumerate(self.conv[r]):
            c += coef * x ** k
        return v * c


def _char_poly_coeffs(perm: Sequence[int], M: Sequence[int]) -> list[float]:
    # det(1 - x P) for the permutation on M: product over cycles of (1 - x^len)
    seen = set()
    poly = [1.0]
    for c in M:
        if c in seen:
            continue
        length = 0
        d = c
        while d not in seen:
            seen.add(d)
            d = perm[d]
            length += 1
        factor = [1.0] + [0.0] * (length - 1) + [-1.0]
        new = [0.0] * (len(poly) + length)
        for i, a in enumerate(poly):
            for j, b in enumerate(factor):
                new[i + j] += a * b
        poly = new
    return poly


def factor_rule(L: OrbifoldLineBundle, F: FujitaReport, datum: GaloisDatum,
                b: BrauerElement | None = None, mode: str = "zeta") -> _FactorRule:
    """Local factor at good p: density (twisted by b) times the convergence multiplier."""
    N = datum.conductor
    terms: dict[int, list] = {}
    conv: dict[int, list] = {}
    zeta = [float(math.comb(F.b, k) * (-1) ** k) for k in range(F.b + 1)]
    idc = datum.classes.identity_class
    chars = {}
    for r, s in datum.frob.items():
        tl = []
        for c in datum.classes.fixed(s):
            if c == idc:
                tl.append((0.0, 1.0))
                continue
            wt = 1.0
            if b is not None:
                if c not in chars:
                    chars[c] = class_character(datum, b, c)
                th = chars[c]
                if th is None:
                    continue
                wt = math.cos(2 * math.pi * float(th[s]))
            tl.append((float(L.weight[c] * F.a), wt))
        terms[r] = tl
        conv[r] = zeta if mode == "zeta" else _char_poly_coeffs(datum.classes.perm[s], F.minimal_classes)
    return _FactorRule(terms, conv, N)


# quadratic L-values for the absolutely convergent normalization

def _quadratic_characters(datum: GaloisDatum, M: Sequence[int]) -> list[dict[int, int]]:
    """Nontrivial quadratic characters in the permutation representation on M (orbits of size <= 2)."""
    out = []
    for orb in datum.classes.orbits_of(M):
        if len(orb) == 1:
            continue
        if len(orb) != 2:
            raise GaloisError("artin mode supports only orbits of size <= 2 on the minimal classes")
        c = orb[0]
        out.append({r: (1 if datum.classes.perm[s][c] == c else -1) for r, s in datum.frob.items()})
    return out


def _primitive(table: dict[int, int], N: int) -> tuple[int, dict[int, int]]:
    for f in divisors(N):
        red = {}
        ok = True
        for r, v in table.items():
            if red.setdefault(r % f, v) != v:
                ok = False
                break
        if ok:
            full = {a: red.get(a, 0) for a in range(f)} if f > 1 else {0: 1}
            return f, full
    return N, table


def quadratic_L1(table: dict[int, int], N: int) -> tuple[float, int, dict[int, int]]:
    """L(1, chi) for a real primitive Dirichlet character given on residues mod N."""
    f, chi = _primitive(table, N)
    odd = chi[(f - 1) % f] == -1
    if odd:
        s = sum(chi[a] * a for a in range(1, f))
        return -math.pi * s / f ** 1.5, f, chi
    s = sum(chi[a] * math.log(math.sin(math.pi * a / f)) for a in range(1, f))
    return -s / math.sqrt(f), f, chi


# the leading constant

@dataclass
class Prefactor:
    element: str
    slice: str
    exact: Fraction
    factors: list[tuple[str, Fraction]]

    @property
    def decimal(self) -> float:
        return float(self.exact)


@dataclass
class LeadingConstantReport:
    a: Fraction
    b: int
    balanced: bool
    brauer_order: int
    prefactors: list[Prefactor]
    products: dict[str, EulerProductResult]  # element label -> Euler product (without prefactor)
    constants: dict[str, float]  # slice -> constant
    mode: str
    groupoid_factor: Fraction | None = None
    extra: dict = field(default_factory=dict)

    @property
    def constant(self) -> float:
        return sum(self.constants.values())

    def tail(self) -> float:
        return max(abs(1 - r.last_factor) for r in self.products.values())

    def to_json(self) -> dict:
        return {
            "a": str(self.a), "b": self.b, "balanced": self.balanced,
            "brauer": {"order": self.brauer_order},
            "prefactors": [{"element": p.element, "slice": p.slice, "exact": str(p.exact),
                            "decimal": p.decimal,
                            "factors": [[k, str(v)] for k, v in p.factors]} for p in self.prefactors],
            "product": {lab: {"P": r.P, "value": r.product, "tail": abs(1 - r.last_factor)}
                        for lab, r in self.products.items()},
            "constants": self.constants,
            "constant": self.constant,
            "mode": self.mode,
            "groupoid_factor": None if self.groupoid_factor is None else str(self.groupoid_factor),
            **self.extra,
        }


def bad_primes(datum: GaloisDatum) -> list[int]:
    ps = set(factorint(datum.G.order)) | set(factorint(datum.conductor))
    ps.discard(1)
    return sorted(ps)


def groupoid_factor(G: FiniteGroup) -> Fraction | None:
    """|N| / (|C| |G|) for G inside the symmetric group of its permutation labels."""
    if G.labels is None or not isinstance(G.labels[0], Perm):
        return None
    from itertools import permutations
    n = G.labels[0].degree
    Gset = {tuple(p.images) for p in G.labels}
    gens = [G.labels[g] for g in G.generators]
    N = C = 0
    for imgs in permutations(range(n)):
        x = Perm(imgs)
        xi = x.inverse()
        conj = [x * g * xi for g in gens]
        if all(tuple(c.images) in Gset for c in conj):
            N += 1
            if all(c.images == g.images for c, g in zip(conj, gens)):
                C += 1
    return Fraction(N, C * G.order)


def leading_constant(L: OrbifoldLineBundle, height: HeightSpec, report: BrauerReport | None = None,
                     P: int = 100_000, mode: str = "zeta", split_arch: bool = False,
                     overrides: Mapping[int, Mapping] | None = None,
                     include_brauer: bool = True, threads: int = 1) -> LeadingConstantReport:
    """c = a^(b-1) / (|G^(k)| (b-1)!) * sum over Brauer elements of its Euler product.

    overrides replace the density at listed places (a local condition); split_arch reports
    one constant per real point label."""
    F = fujita(L)
    if not F.balanced:
        raise UnbalancedError("height is not balanced; use unbalanced_report")
    datum = L.datum
    height.check()
    if report is None:
        report = brauer_report(datum, F.minimal_classes)
    rdatum = report.datum
    nrat = len(datum.rational_characters)
    base = F.a ** (F.b - 1) / (nrat * factorial(F.b - 1))
    bad = bad_primes(datum)
    extra_bad = [p for p in bad_primes(rdatum) if p not in bad]
    if extra_bad:
        raise GaloisError(f"Brauer elements are ramified at {extra_bad} outside the bad places of the height")
    elements = report.elements if include_brauer else [e for e in report.elements if e.is_zero]
    overrides = overrides or {}
    prefs: list[Prefactor] = []
    products: dict[str, EulerProductResult] = {}
    constants: dict[str, float] = {}
    arch_heights = height.arch_heights.get(0, {})
    for b in elements:
        twisted = not b.is_zero
        factors: list[tuple[str, Fraction]] = [("effective cone", base)]
        for p in bad:
            src = overrides.get(p, height.bad_places.get(p))
            if twisted:
                if "twisted" not in src or b.label not in src["twisted"]:
                    raise BundleError(f"missing twisted density for {b.label} at p = {p}")
                factors.append((f"density p={p}", Fraction(src["twisted"][b.label])))
            else:
                factors.append((f"density p={p}", Fraction(src["plain"])))
        conv = Fraction(1)
        for p in bad:
            conv *= (1 - Fraction(1, p)) ** F.b
        factors.append(("convergence at bad places", conv))
        if datum.arch:
            arch = archimedean_density(datum, L, 0, arch_heights, split=True, a=F.a,
                                       report=report if twisted else None, b=b if twisted else None)
            if "inf" in overrides:
                arch = {k: v for k, v in arch.items() if k in set(overrides["inf"])}
            slices = {k: v.fixed for k, v in arch.items()} if split_arch else {"all": _sum_arch(arch)}
        else:
            slices = {"all": None}
        rule = factor_rule(L, F, rdatum, b if twisted else None, mode)
        spec = EulerProductSpec(Fraction(1), rule, frozenset(bad), b.label)
        res = euler_product(spec, P, chunk=PRIME_BLOCK if threads > 1 else None, threads=threads)
        if mode == "artin":
            res = _artin_correct(res, datum, F, bad)
        products[b.label] = res
        for sl, d in slices.items():
            fs = list(factors)
            if d is not None:
                fs.insert(1, ("archimedean", d))
            ex = Fraction(1)
            for _, v in fs:
                ex *= v
            prefs.append(Prefactor(b.label, sl, ex, fs))
            constants[sl] = constants.get(sl, 0.0) + float(ex) * res.product
    if not overrides and sum(constants.values()) <= 0:
        raise ArithmeticError("the Brauer sum gave a non-positive constant; check the twisted densities")
    return LeadingConstantReport(F.a, F.b, True, len(report.elements), prefs, products, constants, mode,
                                 groupoid_factor(datum.G))


def _sum_arch(arch: dict) -> Fraction:
    tot = Fraction(0)
    for d in arch.values():
        tot += d.fixed
    return tot


def _artin_correct(res: EulerProductResult, datum: GaloisDatum, F: FujitaReport, bad) -> EulerProductResult:
    # prod_good (1-1/p)^b / det_p = prod_chi L(1, chi) prod_{p bad} (1 - chi(p)/p)
    corr = 1.0
    for table in _quadratic_characters(datum, F.minimal_classes):
        L1, f, chi = quadratic_L1(table, datum.conductor)
        corr *= L1
        for p in bad:
            corr *= 1 - chi[p % f] / p if f > 1 else 1 - 1 / p
    return EulerProductResult(res.value * corr, res.product * corr, res.P, res.last_factor, res.primes)


def local_probability(L: OrbifoldLineBundle, height: HeightSpec, report: BrauerReport | None = None,
                      conditions: Mapping | None = None, P: int = 100_000) -> dict:
    """Predicted proportion satisfying local conditions, with and without the Brauer sum.

    conditions maps 'inf' to a list of allowed real point labels and primes p to replacement
    density records {'plain': x, 'twisted': {...}}."""
    conditions = dict(conditions or {})
    if not conditions:
        return {"probability": 1.0, "naive": 1.0}
    F = fujita(L)
    report = report or brauer_report(L.datum, F.minimal_classes)
    full = leading_constant(L, height, report, P)
    cond = leading_constant(L, height, report, P, overrides=conditions)
    naive_full = leading_constant(L, height, report, P, include_brauer=False)
    naive_cond = leading_constant(L, height, report, P, overrides=conditions, include_brauer=False)
    return {
        "probability": cond.constant / full.constant,
        "naive": naive_cond.constant / naive_full.constant,
        "constant": cond.constant,
        "naive_constant": naive_cond.constant,
    }


# unbalanced heights

@dataclass
class FiberReport:
    datum: GaloisDatum
    bundle: OrbifoldLineBundle
    fujita: FujitaReport
    weight: Fraction  # 1 / |(G/M)(k)|
    breaking: bool


@dataclass
class UnbalancedReport:
    M: tuple[int, ...]
    quotient: FiniteGroup
    pullback_weights: dict[str, Fraction]
    fibers: list[FiberReport]

    def to_json(self) -> dict:
        return {
            "M_order": len(self.M),
            "quotient_order": self.quotient.order,
            "pullback_weights": {k: str(v) for k, v in self.pullback_weights.items()},
            "fibers": [{"a": str(f.fujita.a), "b": f.fujita.b, "balanced": f.fujita.balanced,
                        "weight": str(f.weight), "breaking": f.breaking} for f in self.fibers],
        }


def unbalanced_report(L: OrbifoldLineBundle, lifts: Sequence[Mapping[int, int]] = (),
                      datum: GaloisDatum | None = None) -> UnbalancedReport:
    """Iitaka decomposition; each lift (Gamma generator -> element of G) gives one twisted fiber.

    datum, when given, must have the same G as L (for instance L's datum extended by a quadratic field)."""
    F = fujita(L)
    if F.balanced:
        raise BundleError("height is balanced; the leading constant applies directly")
    G = L.G
    Msub = G.subgroup(F.iitaka_kernel)
    H = Msub.group
    pull = {}
    for c, r in enumerate(H.classes.reps):
        gcls = G.classes.class_of[Msub.elements[r]]
        pull[H.label(r)] = L.weight[gcls]
    base = datum or L.datum
    Q = F.iitaka_group
    fixed_q = _quotient_points(base, F)
    fibers = []
    for lift in lifts:
        fd = inner_twist_datum(base, Msub, lift)
        vals = [L.weight[G.classes.class_of[Msub.elements[r]]] for r in fd.G.classes.reps]
        w = make_weight(fd, vals)
        fb = validate_bundle(fd, fd.G.characters.trivial(), w)
        ff = fujita(fb)
        breaking = (ff.a, ff.b) > (F.a, F.b)
        fibers.append(FiberReport(fd, fb, ff, Fraction(1, fixed_q), breaking))
    return UnbalancedReport(tuple(F.iitaka_kernel), Q, pull, fibers)


def _quotient_points(datum: GaloisDatum, F: FujitaReport) -> int:
    """|(G/M)(k)|: elements of the quotient fixed by every Gamma element."""
    proj = F.iitaka_projection
    G = datum.G
    img = {}
    for g in range(G.order):
        img.setdefault(proj[g], g)
    cnt = 0
    for q, g in img.items():
        if all(proj[datum.action[s][g]] == q for s in range(datum.gamma.order)):
            cnt += 1
    return cnt
