import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import factorint, primerange

from malle.brauer import brauer_report
from malle.catalog import catalog_group, catalog_names
from malle.galois import ArchPlace, BadPlaceError, constant_datum_over_Q
from malle.picorb import fujita
from malle.tamagawa import (archimedean_density, brute_force_local, convergence_factor, frobenius_of,
                            good_local_density, grunwald_wang_invariant, hilbert_places, hilbert_symbol,
                            hilbert_sum, integral_partial_density, is_local_nth_power, stickelberger_local_data,
                            twisted_local_density)

from helpers import bundle, spec
from oracles import brute_local_count


def _good(L, q):
    return good_local_density(q, frobenius_of(L.datum, q), L)


def test_a4_disc_densities():
    L = bundle("A4")
    for p in primerange(5, 200):
        x = _good(L, p).exact
        assert x == (1 + Fraction(3, p) if p % 3 == 1 else 1 + Fraction(1, p))
    assert archimedean_density(L.datum, L).exact == Fraction(1, 3)


def test_examples():
    S3 = bundle("S3")
    assert brute_force_local(5, S3, frobenius_of(S3.datum, 5)).exact == 1 + Fraction(1, 5) + Fraction(1, 25)
    A4 = bundle("A4")
    assert brute_force_local(7, A4, frobenius_of(A4.datum, 7)).exact == 1 + Fraction(3, 7)
    C3 = bundle("C3")
    assert brute_force_local(2, C3, frobenius_of(C3.datum, 2)).exact == 1
    assert _good(C3, 2).exact == 1


def test_bad_place():
    L = bundle("A4")
    with pytest.raises(BadPlaceError):
        frobenius_of(L.datum, 3)
    with pytest.raises(BadPlaceError):
        good_local_density(2, L.datum.gamma.identity, L)


@pytest.mark.parametrize("name", catalog_names(max_order=24))
def test_mass_formula_against_independent_count(name):
    L = bundle(name, "radical" if name.startswith("C") or name in ("Q8",) else "disc")
    G = L.G
    a = fujita(L).a
    for q in primerange(2, 48):
        if G.order % q == 0:
            continue
        want = {}
        for w, cnt in brute_local_count(G, L.weight, q).items():
            want[(w * a, Fraction(0))] = cnt
        got = {(ex, ang): cnt for ex, ang, cnt in _good(L, q).terms}
        assert got == want, (name, q)


def test_integral_partial_density():
    A4 = bundle("A4")
    for p in [7, 13, 19]:
        assert integral_partial_density(p, frobenius_of(A4.datum, p), A4).exact == 1 + Fraction(3, p)
    D4 = spec("d4-conductor").bundle
    for p in [3, 5, 7, 11]:
        assert integral_partial_density(p, frobenius_of(D4.datum, p), D4).exact == 1 + Fraction(2, p)
    S4 = bundle("S4")
    for p in [5, 7]:
        assert integral_partial_density(p, frobenius_of(S4.datum, p), S4).exact == 1 + Fraction(1, p)


@pytest.mark.parametrize("cfg", ["d4-conductor", "a4-conductor", "s4"])
def test_good_density_tends_to_partial(cfg):
    L = spec(cfg).bundle
    for q in primerange(5, 400):
        fr = frobenius_of(L.datum, q)
        err = _good(L, q).value - integral_partial_density(q, fr, L).value
        assert abs(err) <= 4 / q ** 1.5


def test_arch_conductor_split():
    s = spec("a4-conductor")
    L = s.bundle
    arch = archimedean_density(L.datum, L, split=True, a=fujita(L).a)
    assert arch["R^4"].exact == Fraction(1, 12)
    assert arch["C^2"].exact == Fraction(1, 4)


def test_arch_complex_place():
    d = constant_datum_over_Q(catalog_group("D4"))
    d.arch = [ArchPlace("complex")]
    L = bundle(None, "disc", datum=d)
    assert archimedean_density(d, L).exact == Fraction(1, 8)


def test_twisted_a4_conductor():
    s = spec("a4-conductor")
    L = s.bundle
    R = brauer_report(s.datum, s.support())
    a = fujita(L).a
    zero = [b for b in R.elements if b.is_zero][0]
    beta = [b for b in R.elements if not b.is_zero][0]
    for p in primerange(5, 100):
        fr = frobenius_of(R.datum, p)
        tw = twisted_local_density(p, fr, L, R, beta, a).exact
        assert tw == (1 + Fraction(2, p) if p % 3 == 1 else 1)
        z = twisted_local_density(p, fr, L, R, zero, a)
        assert z.exact == good_local_density(p, frobenius_of(L.datum, p), L).exact


def test_convergence_factors():
    A4 = bundle("A4")
    for p in [7, 13]:
        assert convergence_factor(p, frobenius_of(A4.datum, p), A4) == (1 - Fraction(1, p)) ** 2
    for p in [5, 11]:
        got = convergence_factor(p, frobenius_of(A4.datum, p), A4, mode="artin")
        assert got == (1 - Fraction(1, p)) * (1 - Fraction(1, p * p))
    S4 = bundle("S4")
    for p in [5, 7]:
        fr = frobenius_of(S4.datum, p)
        assert convergence_factor(p, fr, S4) == convergence_factor(p, fr, S4, mode="artin")


# Hilbert symbols

def test_hilbert_values():
    assert hilbert_symbol(5, 2, 2) == Fraction(1, 2)
    assert hilbert_symbol(-1, -1, "inf") == Fraction(1, 2)
    assert hilbert_sum(3, 7) == 0
    # classical table entries
    assert hilbert_symbol(2, 3, 3) == Fraction(1, 2)
    assert hilbert_symbol(2, 5, 5) == Fraction(1, 2)
    assert hilbert_symbol(3, 5, 2) == 0
    assert hilbert_symbol(2, 2, 2) == 0
    assert hilbert_symbol(-1, 3, 2) == Fraction(1, 2)
    assert hilbert_symbol(-1, -1, 2) == Fraction(1, 2)
    assert hilbert_symbol(Fraction(1, 3), 2, 3) == hilbert_symbol(3, 2, 3)


nonzero = st.integers(-500, 500).filter(lambda x: x != 0)
places = st.sampled_from([2, 3, 5, 7, 11, 13, "inf"])


@given(nonzero, nonzero, places)
def test_hilbert_symmetric(a, b, v):
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)


@given(nonzero, nonzero, nonzero, places)
def test_hilbert_bimultiplicative(a, b, c, v):
    assert hilbert_symbol(a * b, c, v) == (hilbert_symbol(a, c, v) + hilbert_symbol(b, c, v)) % 1


@given(nonzero, places)
def test_hilbert_norm_relations(a, v):
    assert hilbert_symbol(a, -a, v) == 0
    if a != 1:
        assert hilbert_symbol(a, 1 - a, v) == 0


def test_product_formula_200_pairs():
    rng = random.Random(7)
    for _ in range(200):
        a = rng.choice([-1, 1]) * rng.randint(1, 10 ** 6)
        b = rng.choice([-1, 1]) * rng.randint(1, 10 ** 6)
        assert hilbert_sum(a, b) == 0
        # places outside hilbert_places contribute nothing
        for p in primerange(3, 60):
            if p not in hilbert_places(a, b):
                assert hilbert_symbol(a, b, p) == 0


def _squarefree(n):
    return all(e == 1 for e in factorint(abs(n)).values())


def test_stickelberger_parity_50_tuples():
    rng = random.Random(11)
    done = 0
    while done < 50:
        d = rng.choice([-1, 1]) * rng.randint(2, 10 ** 5)
        if d % 4 != 1 or not _squarefree(d) or d == 1:
            continue
        data = stickelberger_local_data(d)
        assert sum(inv for _, _, inv in data) % 1 == 0
        assert sum(1 for _, r, _ in data if r == 3) % 2 == 0
        done += 1


def test_stickelberger_rejects_ramified_two():
    with pytest.raises(ValueError):
        stickelberger_local_data(3)


def test_grunwald_wang():
    for p in primerange(3, 200):
        assert is_local_nth_power(16, 8, p)
    assert is_local_nth_power(16, 8, "inf")
    assert not is_local_nth_power(16, 8, 2)
    assert grunwald_wang_invariant() == Fraction(1, 2)
    assert not is_local_nth_power(2, 2, 3)
    assert is_local_nth_power(2, 2, 7)
