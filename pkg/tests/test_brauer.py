from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from malle.brauer import (MarkedCentralExtension, bicyclic_pairs, brauer_report, certificate,
                          extension_from_cocycle, geometric_brauer, marking_descent_search, real_invariant,
                          residue_data, verify_certificate)
from malle.catalog import catalog_group
from malle.cohomology import bockstein, h2_qz_group, h2_trivial
from malle.galois import constant_datum_over_Q
from malle.groups import FiniteGroup, Perm, cyclic_group, direct_product, group_from_generators

from helpers import spec


def _classes(G, labels):
    return sorted({G.classes.class_of[G.index_of(x)] for x in labels})


def _a4():
    d = constant_datum_over_Q(catalog_group("A4"))
    return d, _classes(d.G, ["(1,2,3)", "(1,3,2)"])


def test_a4_three_cycles():
    d, sup = _a4()
    R = brauer_report(d, sup)
    assert R.order == 2 and R.exact
    assert R.algebraic.group.order == 1
    assert len(R.descents) == 1
    cert = certificate(R.datum, R.descents[0])
    assert cert.description == "extension order 24 kernel 2"
    assert verify_certificate(R.datum, cert, sup)
    E = cert.E
    assert sum(1 for x in range(E.order) if E.element_orders[x] == 2) == 1


def test_a4_residues():
    d, sup = _a4()
    R = brauer_report(d, sup)
    b = [e for e in R.elements if not e.is_zero][0]
    res = residue_data(R.datum, b)
    G = R.datum.G
    kinds = {G.label(G.classes.reps[c]): r.kind for c, r in res.items()}
    assert kinds[G.label(G.index_of("(1,2)(3,4)"))] == "geometric"
    assert sorted(v for k, v in kinds.items() if k != G.label(G.index_of("(1,2)(3,4)"))) == ["trivial"]


def test_a4_real_invariants():
    d, sup = _a4()
    R = brauer_report(d, sup)
    b = [e for e in R.elements if not e.is_zero][0]
    G = R.datum.G
    place = R.datum.arch[0]
    assert real_invariant(R.datum, b, place, G.identity) == 0
    assert real_invariant(R.datum, b, place, G.index_of("(1,2)(3,4)")) == Fraction(1, 2)


def test_a4_full_support_obstructed():
    d = constant_datum_over_Q(catalog_group("A4"))
    G = d.G
    sup = [c for c in range(len(G.classes)) if c != d.classes.identity_class]
    R = brauer_report(d, sup)
    assert R.order == 1
    Q = h2_qz_group(G)
    f = Q.generators[0]
    n = f.n
    H2 = h2_trivial(G, 2)
    g = [H2.element(x) for x in H2.group.elements() if any(Q.classify(H2.element(x).scale(n // 2, n)))][0]
    assert marking_descent_search(d, g, sup) is None


def test_trivial_extension_found():
    d, sup = _a4()
    G = d.G
    zero = h2_trivial(G, 2).element((0,) * len(h2_trivial(G, 2).group.invariants))
    dsc = marking_descent_search(d, zero, sup)
    assert dsc is not None
    assert verify_certificate(dsc.datum, certificate(d, dsc), sup)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_symmetric_disc_trivial(n):
    G = group_from_generators(["(1,2)", "(" + ",".join(map(str, range(1, n + 1))) + ")"])
    d = constant_datum_over_Q(G)
    R = brauer_report(d, _classes(G, ["(1,2)"]))
    assert R.order == 1 and R.exact


def test_d4_conductor_trivial():
    s = spec("d4-conductor")
    R = brauer_report(s.datum, s.support())
    assert R.order == 1


def test_z4_weight_two_character():
    s = spec("z4-conductor")
    R = brauer_report(s.datum, s.support())
    assert R.order == 2
    assert R.algebraic.group.order == 2
    b = [e for e in R.elements if not e.is_zero][0]
    res = residue_data(R.datum, b)
    G = R.datum.G
    c2 = G.classes.class_of[G.index_of("(1,3)(2,4)")]
    r = res[c2]
    assert r.kind == "character"
    vals = {p % 4: r.value(p) for p in [5, 7, 13, 11, 17, 19]}
    assert vals == {1: 0, 3: Fraction(1, 2)}
    for c, rr in res.items():
        if c != c2:
            assert rr.kind == "trivial"


def test_z8_grunwald_wang_class():
    s = spec("z8-radical")
    R = brauer_report(s.datum, s.support())
    assert R.order == 2
    assert R.algebraic.group.invariants == (2,)
    assert not R.descents


def test_extension_examples():
    G = catalog_group("A4")
    Q = h2_qz_group(G)
    H = h2_trivial(G, 2)
    f = [H.element(x) for x in H.group.elements() if any(Q.classify(H.element(x).scale(6, 12)))][0]
    E, proj, ker = extension_from_cocycle(G, f)
    assert E.order == 24
    assert sum(1 for x in range(24) if E.element_orders[x] == 2) == 1
    C2 = cyclic_group(2)
    g = 1 - C2.identity
    chi = [0, 0]
    chi[g] = 1
    E2, _, _ = extension_from_cocycle(C2, bockstein(C2, chi, 2))
    assert E2.is_abelian and E2.exponent == 4
    zero = H.element(H.group.zero())
    E3, _, _ = extension_from_cocycle(G, zero)
    assert E3.order == 24 and len(E3.center) == 2 and E3.exponent == 6


@pytest.mark.parametrize("name", ["V4", "D4", "A4", "Q8", "S4"])
def test_geometric_closure(name):
    d = constant_datum_over_Q(catalog_group(name))
    G = d.G
    for sup in ([c for c in range(len(G.classes)) if c != d.classes.identity_class],
                [c for c in range(len(G.classes)) if G.element_orders[G.classes.reps[c]] > 2]):
        if not sup:
            continue
        geo = geometric_brauer(d, sup)
        S = set(geo.bicyclic)
        A = geo.h2.group
        assert A.zero() in S
        for x in S:
            for y in S:
                assert A.add(x, y) in S
        assert set(geo.invariant) <= S


def test_geometric_abelian_generating_support():
    for name in ["V4", "C4", "C6"]:
        d = constant_datum_over_Q(catalog_group(name))
        G = d.G
        sup = [c for c in range(len(G.classes)) if c != d.classes.identity_class]
        assert geometric_brauer(d, sup).invariant_group.order == 1


def test_bicyclic_pairs():
    G = catalog_group("A4")
    pairs = bicyclic_pairs(G, _classes(G, ["(1,2)(3,4)"]))
    for g, h in pairs:
        assert G.mul(g, h) == G.mul(h, g)


def _certificates_of_support(d, sup):
    R = brauer_report(d, sup)
    return R, [certificate(R.datum, x) for x in R.descents]


def test_certificate_residues_trivial_on_support():
    for d, sup in [_a4()]:
        R = brauer_report(d, sup)
        for b in R.elements:
            if b.descent is None:
                continue
            res = residue_data(R.datum, b)
            for c in sup:
                orb0 = R.datum.classes.orbit_of(c)[0]
                assert res[orb0].kind == "trivial"


def _relabel_cert(cert: MarkedCentralExtension, pi: list[int]) -> MarkedCentralExtension:
    E = cert.E
    N = E.order
    inv = [0] * N
    for a, b in enumerate(pi):
        inv[b] = a
    table = [[pi[E.mul(inv[x], inv[y])] for y in range(N)] for x in range(N)]
    E2 = FiniteGroup(table, identity=pi[E.identity])
    return MarkedCentralExtension(
        E2, cert.n, [pi[k] for k in cert.kernel], [cert.projection[inv[x]] for x in range(N)],
        sorted(pi[m] for m in cert.marking), [[pi[th[inv[x]]] for x in range(N)] for th in cert.galois_action])


@settings(max_examples=20)
@given(st.randoms(use_true_random=False))
def test_certificate_relabeling_invariant(rnd):
    d, sup = _a4()
    R = brauer_report(d, sup)
    cert = certificate(R.datum, R.descents[0])
    pi = list(range(cert.E.order))
    rnd.shuffle(pi)
    assert verify_certificate(R.datum, _relabel_cert(cert, pi), sup)
    # a broken marking is rejected after relabeling too
    bad = _relabel_cert(cert, pi)
    bad.marking = bad.marking[1:]
    assert not verify_certificate(R.datum, bad, sup)


S4_PERMS = [Perm.parse(x, 4) for x in ["()", "(1,2)", "(1,2,3,4)", "(2,4)", "(1,3,2)", "(1,4)(2,3)"]]


@pytest.mark.parametrize("k", range(len(S4_PERMS)))
def test_descent_invariant_under_relabeling_of_g(k):
    x = S4_PERMS[k]
    gens = [x * Perm.parse(g, 4) * x.inverse() for g in ["(1,2,3)", "(1,2)(3,4)"]]
    G = group_from_generators(gens)
    d = constant_datum_over_Q(G)
    three = [c for c in range(len(G.classes)) if G.element_orders[G.classes.reps[c]] == 3]
    R = brauer_report(d, three)
    assert R.order == 2 and len(R.descents) == 1
    assert verify_certificate(R.datum, certificate(R.datum, R.descents[0]), three)


def _product_support(G, H, P, supG, supH):
    idG, idH = G.identity, H.identity
    out = set()
    for c in supG:
        for g in G.classes.classes[c]:
            out.add(P.classes.class_of[g * H.order + idH])
    for c in supH:
        for h in H.classes.classes[c]:
            out.add(P.classes.class_of[idG * H.order + h])
    return sorted(out)


@pytest.mark.parametrize("left,right,labels_l,labels_r", [
    ("C2", "C2", ["(1,2)"], ["(1,2)"]),
    ("S3", "C2", ["(1,2)"], ["(1,2)"]),
    ("C4", "C2", ["(1,2,3,4)", "(1,4,3,2)"], ["(1,2)"]),
])
def test_brauer_products(left, right, labels_l, labels_r):
    G, H = catalog_group(left), catalog_group(right)
    P = direct_product(G, H)
    # element (g, h) has index g * |H| + h; check the convention before relying on it
    assert P.mul(1 * H.order + 0, 0 * H.order + 1) == P.mul(0 * H.order + 1, 1 * H.order + 0)
    sG, sH = _classes(G, labels_l), _classes(H, labels_r)
    sP = _product_support(G, H, P, sG, sH)
    oG = brauer_report(constant_datum_over_Q(G), sG).order
    oH = brauer_report(constant_datum_over_Q(H), sH).order
    oP = brauer_report(constant_datum_over_Q(P), sP).order
    assert oP == oG * oH
