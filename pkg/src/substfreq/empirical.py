"""Brute-force factor counting over long fixed-point prefixes.

Windows are identified by dense class ids that are refined one letter at a
time: the class of a length-``n`` window is determined by the class of its
length-``n-1`` prefix and its last letter, so ``np.bincount`` on the packed
pair replaces hashing or sorting. Class ids come out in lexicographic order
of the windows they stand for.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

import numpy as np

from .words import Morphism, Word, fixed_point_array

DEFAULT_PREFIX = 1 << 20


@dataclass(frozen=True)
class WindowClasses:
    """All windows of one length in a text, grouped into classes."""

    length: int
    ids: np.ndarray        # class id of the window starting at each position
    counts: np.ndarray     # occurrences per class
    first: np.ndarray      # first starting position per class

    def words(self, text: np.ndarray) -> list[Word]:
        n = self.length
        return [tuple(text[p:p + n].tolist()) for p in self.first]

    def __len__(self):
        return len(self.counts)


def iter_window_classes(text: np.ndarray, max_len: int) -> Iterator[WindowClasses]:
    """Yield the window classes of ``text`` for lengths ``1 .. max_len``."""
    text = np.asarray(text)
    P = len(text)
    if P == 0:
        return
    m = int(text.max()) + 1
    letters = text.astype(np.int64)
    ids = None
    for n in range(1, min(max_len, P) + 1):
        key = letters if ids is None else ids[:-1] * m + letters[n - 1:]
        counts = np.bincount(key)
        present = np.flatnonzero(counts)
        remap = np.full(len(counts), -1, dtype=np.int64)
        remap[present] = np.arange(len(present), dtype=np.int64)
        ids = remap[key]
        positions = np.arange(len(ids), dtype=np.int64)
        first = np.empty(len(present), dtype=np.int64)
        # repeated indices: the last assignment wins, so write positions in reverse
        first[ids[::-1]] = positions[::-1]
        yield WindowClasses(n, ids, counts[present], first)


def _counts_single(text: np.ndarray, n: int) -> Counter:
    classes = None
    for classes in iter_window_classes(text, n):
        pass
    if classes is None or classes.length != n:
        return Counter()
    return Counter(dict(zip(classes.words(text), (int(c) for c in classes.counts))))


def window_counts(text: Sequence[int] | np.ndarray, n: int, threads: int = 1) -> dict[Word, int]:
    """Occurrence count of every length-``n`` window of ``text``.

    With ``threads > 1`` the text is cut into chunks overlapping by ``n - 1``
    letters, counted concurrently and merged; the result does not depend on
    the number of chunks.
    """
    if n < 1:
        raise ValueError("window length must be positive")
    text = np.asarray(text, dtype=np.uint8)
    n_windows = len(text) - n + 1
    if n_windows <= 0:
        return {}
    threads = max(1, min(threads, n_windows))
    if threads == 1:
        total = _counts_single(text, n)
    else:
        bounds = np.linspace(0, n_windows, threads + 1).astype(int)
        pieces = [text[s:e + n - 1] for s, e in zip(bounds[:-1], bounds[1:]) if e > s]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda t: _counts_single(t, n), pieces))
        total = Counter()
        for part in parts:
            total.update(part)
    return dict(sorted(total.items()))


@dataclass
class EstimateReport:
    n: int
    prefix_len: int
    counts: dict[Word, int] = field(default_factory=dict)
    estimates: dict[Word, Fraction] = field(default_factory=dict)
    max_abs_error: Fraction | None = None
    missing: list[Word] = field(default_factory=list)

    @property
    def n_windows(self) -> int:
        return max(0, self.prefix_len - self.n + 1)


def max_abs_error(estimates: Mapping[Word, Fraction], exact: Mapping[Word, Fraction]) -> Fraction:
    """Largest deviation over the union of both tables; absent entries count as zero."""
    keys = set(estimates) | set(exact)
    return max((abs(estimates.get(w, Fraction(0)) - Fraction(exact.get(w, 0))) for w in keys),
               default=Fraction(0))


def estimate_from_text(text, n: int, exact: Mapping[Word, Fraction] | None = None,
                       threads: int = 1) -> EstimateReport:
    P = len(text)
    report = EstimateReport(n, P)
    if n > P:
        return report
    report.counts = window_counts(text, n, threads=threads)
    total = P - n + 1
    report.estimates = {w: Fraction(c, total) for w, c in report.counts.items()}
    if exact is not None:
        report.max_abs_error = max_abs_error(report.estimates, exact)
        report.missing = sorted(w for w in exact if w not in report.counts)
    return report


def estimate(phi: Morphism, seed: int, n: int, P: int = DEFAULT_PREFIX,
             exact: Mapping[Word, Fraction] | None = None, threads: int = 1) -> EstimateReport:
    """Empirical densities of the length-``n`` factors in the length-``P`` prefix."""
    if n < 1:
        raise ValueError("factor length must be positive")
    return estimate_from_text(fixed_point_array(phi, seed, P), n, exact, threads)


def convergence_scan(phi: Morphism, seed: int, n: int, P_list: Sequence[int],
                     exact: Mapping[Word, Fraction]) -> list[Fraction]:
    """Maximal absolute error against ``exact`` for each prefix length.

    Lengths shorter than ``n`` produce no report and are skipped. No
    monotonicity is asserted.
    """
    if any(a >= b for a, b in zip(P_list, P_list[1:])):
        raise ValueError("prefix lengths must be strictly increasing")
    if not P_list:
        return []
    text = fixed_point_array(phi, seed, max(P_list))
    errors = []
    for P in P_list:
        if n > P:
            continue
        errors.append(estimate_from_text(text[:P], n, exact).max_abs_error)
    return errors
