from collections import Counter
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import frid
from substfreq.empirical import (
    convergence_scan, estimate, estimate_from_text, iter_window_classes, max_abs_error,
    window_counts,
)
from substfreq.words import fixed_point_array, gtm_morphism


def naive_counts(text, n):
    text = list(text)
    return Counter(tuple(text[i:i + n]) for i in range(len(text) - n + 1))


texts = st.lists(st.integers(0, 3), min_size=1, max_size=80)


@given(texts, st.integers(1, 6))
def test_window_counts_match_slicing(text, n):
    assert window_counts(text, n) == dict(naive_counts(text, n))


@settings(deadline=None)
@given(texts, st.integers(1, 6), st.integers(2, 7))
def test_chunking_does_not_change_counts(text, n, threads):
    assert window_counts(text, n, threads=threads) == window_counts(text, n)


@given(texts)
def test_window_classes_are_lexicographic(text):
    arr = np.array(text, dtype=np.uint8)
    for classes in iter_window_classes(arr, 5):
        words = classes.words(arr)
        assert words == sorted(words)
        assert len(set(words)) == len(words)
        assert dict(zip(words, classes.counts.tolist())) == naive_counts(text, classes.length)
        for cid, p in enumerate(classes.first):
            assert classes.ids[p] == cid and cid not in classes.ids[:p]


def test_thue_morse_letters():
    rep = estimate(gtm_morphism(2, 2), 0, 1, 1 << 20, exact={(0,): F(1, 2), (1,): F(1, 2)})
    assert rep.max_abs_error <= F(1, 1 << 18)
    assert sum(rep.counts.values()) == rep.n_windows
    assert sum(rep.estimates.values()) == 1


def test_periodic_counts():
    rep = estimate(gtm_morphism(3, 2), 0, 2, 10 ** 4)
    assert rep.estimates == {(0, 1): F(5000, 9999), (1, 0): F(4999, 9999)}


def test_t23_pairs():
    t = frid(2, 3)
    rep = estimate(t.morphism, 0, 2, 1 << 20, exact=t.table(2))
    assert rep.max_abs_error <= F(1, 10 ** 4)
    assert rep.missing == []


def test_convergence_scan_thue_morse():
    t = frid(2, 2)
    errors = convergence_scan(t.morphism, 0, 2, [1 << 10, 1 << 14, 1 << 18], t.table(2))
    assert len(errors) == 3
    assert errors[-1] < F(1, 1000)


def test_convergence_scan_periodic_is_exact():
    t = frid(3, 2)
    # even prefix lengths of (01)^w give exactly 1/2 on letters
    assert convergence_scan(t.morphism, 0, 1, [2, 64, 1024], t.table(1)) == [0, 0, 0]


def test_degenerate_inputs():
    assert estimate_from_text(np.zeros(3, dtype=np.uint8), 5).counts == {}
    assert convergence_scan(gtm_morphism(2, 2), 0, 10, [4, 8], {}) == []
    with pytest.raises(ValueError):
        convergence_scan(gtm_morphism(2, 2), 0, 1, [8, 4], {})
    with pytest.raises(ValueError):
        window_counts([0, 1], 0)


def test_max_abs_error_counts_missing_words():
    assert max_abs_error({(0,): F(1)}, {(0,): F(1, 2), (1,): F(1, 2)}) == F(1, 2)


@pytest.mark.parametrize("bm", [(2, 2), (2, 3), (3, 3)])
def test_estimates_converge_up_to_length_16(bm):
    t = frid(*bm)
    text = fixed_point_array(t.morphism, 0, 1 << 20)
    for n in range(1, 17):
        rep = estimate_from_text(text, n, t.table(n))
        assert rep.max_abs_error < F(1, 1000)
        assert rep.missing == []
