from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from malle.catalog import catalog_group, catalog_names
from malle.groups import CycleParseError, Perm, cyclic_group, direct_product, group_from_generators

SMALL = catalog_names(max_order=24)


@pytest.mark.parametrize("name", SMALL)
def test_group_axioms(name):
    G = catalog_group(name)
    e = G.identity
    for a in range(G.order):
        assert G.mul(a, e) == a == G.mul(e, a)
        assert G.mul(a, G.inv(a)) == e
    # associativity on generators is enough given closure, but check all triples for small groups
    rng = range(G.order) if G.order <= 12 else G.generators
    for a in range(G.order):
        for b in range(G.order):
            for c in rng:
                assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


@pytest.mark.parametrize("name", SMALL)
def test_classes_partition(name):
    G = catalog_group(name)
    sizes = G.classes.sizes()
    assert sum(sizes) == G.order
    assert all(G.order % s == 0 for s in sizes)
    for cls in G.classes.classes:
        S = set(cls)
        for g in range(G.order):
            assert {G.conj(g, x) for x in S} == S


@pytest.mark.parametrize("name", SMALL)
def test_characters(name):
    G = catalog_group(name)
    X = G.characters
    D = G.derived_subgroup
    assert X.order == G.order // len(D)
    for chi in X.characters:
        assert all(chi[d] == 0 for d in D)
        for a in range(G.order):
            for b in G.generators:
                assert chi[G.mul(a, b)] == (chi[a] + chi[b]) % 1


@pytest.mark.parametrize("name", SMALL)
def test_quotient_by_derived(name):
    G = catalog_group(name)
    N = G.derived_subgroup
    Q, proj = G.quotient(N)
    assert {g for g in range(G.order) if proj[g] == Q.identity} == set(N)
    for a in range(G.order):
        for b in range(G.order):
            assert proj[G.mul(a, b)] == Q.mul(proj[a], proj[b])


@pytest.mark.parametrize("name", ["A4", "S4", "D4"])
@given(data=st.data())
def test_subgroup_generated_idempotent_monotone(name, data):
    G = catalog_group(name)
    S = data.draw(st.sets(st.integers(0, G.order - 1), max_size=3))
    T = data.draw(st.sets(st.integers(0, G.order - 1), max_size=2))
    A = set(G.closure(S))
    assert set(G.closure(A)) == A
    assert A <= set(G.closure(S | T))


def test_examples():
    A4 = catalog_group("A4")
    assert A4.characters.order == 3
    assert A4.m_torsion_count(2) == 4
    assert len(catalog_group("D4").center) == 2
    for n in range(2, 7):
        G = group_from_generators(["(1,2)", "(" + ",".join(map(str, range(1, n + 1))) + ")"])
        assert G.characters.order == 2
    assert catalog_group("S4").characters.order == 2
    assert catalog_group("V4").characters.order == 4


def test_catalog_orders():
    expect = {"C2": 2, "C8": 8, "V4": 4, "S3": 6, "S4": 24, "A4": 12, "D4": 8, "D5": 10, "D6": 12,
              "Q8": 8, "C3wrC2": 18, "SL(2,3)": 24, "S5": 120}
    for k, v in expect.items():
        assert catalog_group(k).order == v
    assert catalog_group("C3≀C2").table.tolist() == catalog_group("C3wrC2").table.tolist()


def test_perm_parse():
    p = Perm.parse("(1,2,3)(4,5)")
    assert sorted(p.cycle_type()) == [2, 3]
    assert Perm.parse("()", 3).degree == 3
    with pytest.raises(CycleParseError):
        Perm.parse("(1,2,x)")
    with pytest.raises(CycleParseError):
        Perm.parse("(1,2")


def test_direct_product_and_cyclic():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6 and G.is_abelian
    assert cyclic_group(5).exponent == 5
    assert all(isinstance(x, Fraction) for x in G.characters.characters[1])
