from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import APERIODIC, FAMILY, frid, index
from substfreq.language import build_index
from substfreq.symmetry import (
    Pi, Psi, SymmetryError, apply_element, compose, dihedral_group, frequency_orbits,
    is_theta_palindrome, upper_bound_report, verify_invariance,
)
from substfreq.words import Morphism, apply, format_word, gtm_morphism, parse_word


def W(s):
    return parse_word(s)


def test_apply_element_examples():
    assert apply_element(Pi(1, 3), W("012")) == W("120")
    assert apply_element(Psi(0, 2), W("01")) == W("10")
    assert apply_element(Pi(0, 4), W("0123")) == W("0123")
    assert Psi(1, 3)(W("001")) == W("011")


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_dihedral_group_axioms(m):
    G = dihedral_group(m)
    assert len(set(G)) == 2 * m
    for g in G:
        assert Pi(0, m) @ g == g == g @ Pi(0, m)
        if g.antimorphic:
            assert g @ g == Pi(0, m)
        for h in G:
            assert g @ h in G


@given(st.integers(1, 6).flatmap(lambda m: st.tuples(
    st.just(m),
    st.sampled_from(dihedral_group(m)), st.sampled_from(dihedral_group(m)),
    st.lists(st.integers(0, m - 1), max_size=12).map(tuple))))
def test_composition_matches_action(data):
    m, g, h, w = data
    assert (g @ h)(w) == g(h(w))
    # antimorphisms reverse concatenation
    u, v = w[:len(w) // 2], w[len(w) // 2:]
    if g.antimorphic:
        assert g(u + v) == g(v) + g(u)
    else:
        assert g(u + v) == g(u) + g(v)


def test_compose_rejects_mixed_alphabets():
    with pytest.raises(ValueError):
        compose(Pi(1, 2), Pi(1, 3))


@pytest.mark.parametrize("bm, n", [((2, 2), 4), ((2, 3), 6)])
def test_invariance_examples(bm, n):
    assert verify_invariance(index(*bm, 8), dihedral_group(bm[1]), n)


def test_invariance_fails_on_constant_word():
    idx = build_index(Morphism.from_images(["00", "11"]), 0, 3)
    assert not verify_invariance(idx, [Pi(0, 2), Pi(1, 2)], 2)


def orbit_strings(orbits):
    return sorted(sorted(format_word(w) for w in o) for o in orbits)


def test_thue_morse_orbits():
    t = frid(2, 2)
    G = dihedral_group(2)
    assert orbit_strings(frequency_orbits(index(2, 2, 8), t.frequency, G, 2)) == [
        ["00", "11"], ["01", "10"]]
    assert orbit_strings(frequency_orbits(index(2, 2, 8), t.frequency, G, 3)) == [
        ["001", "011", "100", "110"], ["010", "101"]]


def test_periodic_orbit():
    t = frid(3, 2)
    assert orbit_strings(frequency_orbits(index(3, 2, 8), t.frequency, dihedral_group(2), 2)) == [
        ["01", "10"]]


def test_orbit_with_mixed_frequencies_is_an_error():
    t = frid(2, 2)

    def lying(w):
        return F(1, 7) if w == W("01") else t.frequency(w)

    with pytest.raises(SymmetryError):
        frequency_orbits(index(2, 2, 8), lying, dihedral_group(2), 2)


@pytest.mark.parametrize("bm", FAMILY)
def test_frequencies_are_symmetric(bm):
    t = frid(*bm)
    idx = index(*bm, 34)
    G = dihedral_group(bm[1])
    for n in range(1, 17):
        level = idx.factors(n)
        before = Counter(t.frequency(w) for w in level)
        for g in G:
            assert Counter(t.frequency(g(w)) for w in level) == before


def _q(b, m):
    return next(k for k in range(1, m + 1) if k * (b - 1) % m == 0)


@pytest.mark.parametrize("bm", APERIODIC)
def test_bispecials_at_power_lengths(bm):
    # at n0 * b^l with n0 in 2..2b-1 the BS factors are the m shifts of phi^l(01..(n0-1))
    b, m = bm
    phi = gtm_morphism(b, m)
    idx = index(b, m, 34)
    for l in range(3):
        for n0 in range(2, 2 * b):
            n = n0 * b ** l
            if n + 2 > 34:
                continue
            w = tuple(k % m for k in range(n0))
            for _ in range(l):
                w = apply(phi, w)
            expected = sorted(Pi(x, m)(w) for x in range(m))
            assert idx.bispecial_factors(n) == expected


@pytest.mark.parametrize("bm", [(2, 2), (3, 4)])
def test_weak_lengths_have_palindromic_bispecials(bm):
    b, m = bm
    assert _q(b, m) == 2
    G = dihedral_group(m)
    idx = index(b, m, 34)
    for l in range(2):
        n = (2 * b - 1) * b ** l
        if n + 2 > 34:
            continue
        bs = idx.bispecial_factors(n)
        assert len(bs) == m
        assert all(is_theta_palindrome(w, G) for w in bs)


@pytest.mark.parametrize("bm", APERIODIC)
def test_bound_is_never_exceeded(bm):
    b, m = bm
    t = frid(b, m)
    idx = index(b, m, 34)
    G = dihedral_group(m)
    for n in range(1, 31):
        rep = upper_bound_report(idx, t.frequency, G, n)
        assert rep.observed <= rep.bound
        assert rep.observed <= _q(b, m) + 3


def test_bound_report_thue_morse():
    rep = upper_bound_report(index(2, 2, 10), frid(2, 2).frequency, dihedral_group(2), 6)
    assert (rep.complexity_gap, rep.group_size, rep.bispecial, rep.bispecial_palindromes) == (4, 4, 2, 2)
    assert rep.bound == 4 and rep.strict
    assert rep.as_dict()["bound"] == "4/1"
    # two values only: the three row formulas coincide when b = 2
    assert rep.observed == 2


def test_bound_report_t34():
    rep = upper_bound_report(index(3, 4, 8), frid(3, 4).frequency, dihedral_group(4), 5)
    assert rep.bound == 4 and rep.observed == 3
