import pytest
from hypothesis import given, strategies as st

from malle.catalog import catalog_group
from malle.galois import (BadPlaceError, GaloisError, constant_datum_over_Q, extend_by_quadratic,
                          frobenius_fixed_classes, inner_twist_datum, refine_cyclotomic)


def _datum(name, m=None):
    return constant_datum_over_Q(catalog_group(name), m)


@pytest.mark.parametrize("name", ["C3", "C4", "C8", "A4", "D4", "Q8", "SL(2,3)", "C3wrC2"])
def test_class_action_is_group_action(name):
    d = _datum(name)
    T = d.classes
    Gm = d.gamma
    idp = T.perm[Gm.identity]
    assert list(idp) == list(range(len(idp)))
    for s in range(Gm.order):
        for t in range(Gm.order):
            st_ = Gm.mul(s, t)
            assert [T.perm[s][T.perm[t][c]] for c in range(len(idp))] == list(T.perm[st_])


@pytest.mark.parametrize("name", ["C5", "C8", "A4", "D6"])
def test_twist_preserves_size_and_order(name):
    d = _datum(name)
    G = d.G
    for s in range(d.gamma.order):
        for c in range(len(G.classes)):
            c2 = d.classes.perm[s][c]
            assert G.classes.sizes()[c] == G.classes.sizes()[c2]
            assert G.element_orders[G.classes.reps[c]] == G.element_orders[G.classes.reps[c2]]


@given(st.integers(1, 10_000))
def test_frobenius_depends_on_residue(k):
    d = _datum("C8")
    p = 2 * k + 1
    assert frobenius_fixed_classes(d, p) == frobenius_fixed_classes(d, p + d.conductor)


def test_bad_place_raises():
    with pytest.raises(BadPlaceError):
        _datum("C3").frobenius(3)


@pytest.mark.parametrize("name", ["C3", "C4", "C8", "A4", "V4", "S3"])
def test_rational_characters(name):
    d = _datum(name)
    G = d.G
    R = d.rational_characters
    assert G.characters.trivial() in R
    from malle.galois import act_on_character
    for i in R:
        for s in range(d.gamma.order):
            assert G.characters.index(act_on_character(d, s, G.characters.characters[i])) in R


def test_rational_character_counts():
    assert len(_datum("A4").rational_characters) == 1
    assert len(_datum("C3").rational_characters) == 1
    assert len(_datum("V4").rational_characters) == 4


def test_cyclic_class_orbits():
    # C3 over Q: the two generators are swapped by Frobenius at 2
    d = _datum("C3")
    assert len(d.classes.orbits) == 2
    assert len(frobenius_fixed_classes(d, 2)) == 1
    assert len(frobenius_fixed_classes(d, 7)) == 3


def test_a4_classes():
    d = _datum("A4")
    assert len(frobenius_fixed_classes(d, 7)) == 4
    assert len(frobenius_fixed_classes(d, 5)) == 2


def test_refine_and_quadratic():
    d = _datum("C4")
    r = refine_cyclotomic(d, 8)
    assert r.cyc_modulus == 8 and r.gamma.order == 4
    assert len(r.classes.orbits) == len(d.classes.orbits)
    q = extend_by_quadratic(d, 5)
    assert q.gamma.order == 2 * d.gamma.order
    assert q.conductor == 20


def test_inner_twist_trivial_lift():
    d = _datum("D4")
    G = d.G
    M = G.subgroup(G.closure([G.index_of("(1,3)"), G.index_of("(2,4)")]))
    lift = {s: G.identity for s in d.gamma.generators}
    t = inner_twist_datum(d, M, lift)
    H = M.group
    assert len(t.classes.orbits) == len(H.classes)


def test_inner_twist_d4_orbit():
    d = extend_by_quadratic(_datum("D4"), 5)
    G = d.G
    M = G.subgroup(G.closure([G.index_of("(1,3)"), G.index_of("(2,4)")]))
    sw = G.index_of("(1,2)(3,4)")
    lift = {s: (sw if s % 2 else G.identity) for s in d.gamma.generators}
    t = inner_twist_datum(d, M, lift)
    H = M.group
    i13 = H.classes.class_of[M.elements.index(G.index_of("(1,3)"))]
    i24 = H.classes.class_of[M.elements.index(G.index_of("(2,4)"))]
    assert t.classes.orbit_of(i13) == t.classes.orbit_of(i24)


def test_inner_twist_not_normalizing():
    d = _datum("S3")
    G = d.G
    M = G.subgroup(G.closure([G.index_of("(1,2)")]))
    gens = list(d.gamma.generators) or [d.gamma.identity]
    with pytest.raises(GaloisError):
        inner_twist_datum(d, M, {s: G.index_of("(1,2,3)") for s in gens})


def test_bad_modulus():
    with pytest.raises(GaloisError):
        constant_datum_over_Q(catalog_group("C4"), 6)


def test_quadratic_inside_cyclotomic_rejected():
    with pytest.raises(GaloisError):
        extend_by_quadratic(_datum("C3"), -3)
    with pytest.raises(GaloisError):
        extend_by_quadratic(_datum("C4"), -1)
    extend_by_quadratic(_datum("C3"), 5)
