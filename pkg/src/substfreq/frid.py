"""Exact factor frequencies of fixed points of uniform marked primitive morphisms.

Frequencies of short factors come from one global rational linear system made
of the ancestor equation ``rho(v) = (1/b) * sum(rho(ancestor))`` over all
interpretations of ``v``, the letter frequencies, Kirchhoff's law at every
factor and a normalization per length. Longer factors are reduced to shorter
ones through their interpretations, and whole frequency multisets for any
length follow from the decomposition ``n = b**p * (k - 1) + delta``.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .empirical import iter_window_classes
from .language import LanguageError, LanguageIndex, build_index
from .linalg import SparseSystem
from .morphism import MorphismProfile, NotPrimitiveError, profile
from .words import Morphism, Word, fixed_point_array, gtm_morphism

DEFAULT_SYNC_PREFIX = 10 ** 6


class NotCircularError(ValueError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


@dataclass(frozen=True, order=True)
class Interpretation:
    """``v`` is ``phi(ancestor)`` with ``left_cut`` letters dropped on the left
    and ``right_cut`` on the right."""

    ancestor: Word
    left_cut: int
    right_cut: int


@dataclass(frozen=True)
class DecompositionParams:
    p: int
    k: int
    delta: int
    b: int

    @property
    def n(self) -> int:
        return self.b ** self.p * (self.k - 1) + self.delta


@dataclass
class CircularityReport:
    sync_delay: int
    check_up_to: int
    checked: int = 0
    counterexamples: list[Word] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def ordering_number(b: int, sync_delay: int) -> int:
    """Least ``K`` with ``b*(K-1) + 1 >= sync_delay``, never below 2."""
    K = 1 + max(0, -(-(sync_delay - 1) // b))
    return max(K, 2)


def decomposition(n: int, b: int, K: int) -> DecompositionParams:
    """The unique ``(p, k, delta)`` with ``n = b**p*(k-1) + delta``,
    ``K <= k <= b*(K-1)`` and ``1 <= delta <= b**p``."""
    if K < 2:
        raise ValueError("the ordering number must be at least 2")
    if n < K:
        raise ValueError(f"n={n} is below the ordering number K={K}")
    # p + 1 = ceil(log_b(n / (K-1))), found without floating point
    e, power = 0, 1
    while power * (K - 1) < n:
        e += 1
        power *= b
    p = max(e - 1, 0)
    bp = b ** p
    k = -(-n // bp)
    return DecompositionParams(p, k, n - bp * (k - 1), b)


class FridContext:
    """Everything needed to evaluate factor frequencies of one fixed point.

    ``sync_delay`` is a candidate synchronization delay; it is checked
    against the fixed point before it is used. Without one, the context is
    still exact (the ancestor equation holds for every primitive morphism) but
    multisets are built word by word instead of by decomposition.
    """

    def __init__(self, phi: Morphism, seed: int = 0, sync_delay: int | None = None,
                 sync_prefix: int = DEFAULT_SYNC_PREFIX):
        self.morphism = phi
        self.seed = seed
        self.profile: MorphismProfile = profile(phi)
        if self.profile.uniform_length is None:
            raise ValueError("only uniform morphisms are supported")
        if not self.profile.is_primitive:
            raise NotPrimitiveError("frequencies are undefined: morphism is not primitive")
        self.b = self.profile.uniform_length
        self.sync_prefix = sync_prefix
        self.sync_delay = sync_delay
        if sync_delay is not None:
            if not self.profile.is_marked:
                raise ValueError("decomposition requires a marked morphism")
            self.K = ordering_number(self.b, sync_delay)
            self.base_len = self.b * (self.K - 1) + 1
        else:
            self.K = None
            self.base_len = 2
        self.index: LanguageIndex = build_index(phi, seed, self.base_len + 2)
        self._alignments: dict[int, dict[Word, frozenset[int]]] = {}
        self._freq: dict[Word, Fraction] = {}
        if sync_delay is not None:
            report = verify_circularity(self, sync_delay, max(self.base_len + self.b, 2 * sync_delay))
            if not report.ok:
                raise NotCircularError(
                    f"factor {report.counterexamples[0]} of length >= {sync_delay} "
                    "has no synchronization point", report.counterexamples[0])
        self._freq.update(self.base_frequencies)

    @property
    def circular(self) -> bool:
        return self.sync_delay is not None

    @cached_property
    def _text(self) -> np.ndarray:
        return fixed_point_array(self.morphism, self.seed, self.sync_prefix)

    def alignment_classes(self, n: int) -> dict[Word, frozenset[int]]:
        """For each length-``n`` factor seen in the prefix, its starting positions mod ``b``."""
        if n not in self._alignments:
            text, b = self._text, self.b
            classes = None
            for classes in iter_window_classes(text, n):
                pass
            if classes is None or classes.length != n:
                raise LanguageError(f"prefix of {len(text)} letters is shorter than {n}")
            pos_mod = np.arange(len(classes.ids)) % b
            seen = np.bincount(classes.ids * b + pos_mod, minlength=len(classes) * b)
            seen = seen.reshape(len(classes), b) > 0
            words = classes.words(text)
            self._alignments[n] = {
                w: frozenset(int(r) for r in np.flatnonzero(row)) for w, row in zip(words, seen)}
        return self._alignments[n]

    # -- interpretations -------------------------------------------------

    def interpretations(self, v: Word) -> list[Interpretation]:
        v = self.index.require(v)
        return _interpretations(self.morphism, self.b, v, self.index)

    # -- frequencies -----------------------------------------------------

    @cached_property
    def base_frequencies(self) -> dict[Word, Fraction]:
        return solve_base_frequencies(self.morphism, self.index, self.base_len, self.profile)

    def frequency(self, w) -> Fraction:
        w = tuple(w)
        cached = self._freq.get(w)
        if cached is not None:
            return cached
        self.index.require(w)
        # beyond the base lengths every ancestor is strictly shorter than w
        total = sum((self.frequency(s.ancestor) for s in
                     _interpretations(self.morphism, self.b, w, self.index)), Fraction(0))
        value = total / self.b
        self._freq[w] = value
        return value

    __call__ = frequency

    def table(self, n: int) -> dict[Word, Fraction]:
        return {w: self.frequency(w) for w in self.index.sorted_factors(n)}

    def frequency_multiset(self, n: int) -> Counter:
        """Multiset ``{frequency: multiplicity}`` over all factors of length ``n + 1``."""
        if n < 0:
            raise ValueError("n must be non-negative")
        if not self.circular or n < self.K:
            return Counter(self.frequency(w) for w in self.index.factors(n + 1))
        d = decomposition(n, self.b, self.K)
        scale = Fraction(1, self.b ** d.p)
        out: Counter = Counter()
        if d.delta:
            for w in self.index.factors(d.k + 1):
                out[scale * self.base_frequencies[w]] += d.delta
        rest = self.b ** d.p - d.delta
        if rest:
            for w in self.index.factors(d.k):
                out[scale * self.base_frequencies[w]] += rest
        return out


@functools.lru_cache(maxsize=64)
def _piece_table(phi: Morphism) -> dict[tuple[int, Word], tuple[int, ...]]:
    """``(offset, piece) -> letters whose image shows piece at offset``."""
    table: dict[tuple[int, Word], list[int]] = {}
    for c, img in enumerate(phi.images):
        for lo in range(len(img)):
            for hi in range(lo + 1, len(img) + 1):
                table.setdefault((lo, img[lo:hi]), []).append(c)
    return {k: tuple(v) for k, v in table.items()}


def _interpretations(phi: Morphism, b: int, v: Word, index: LanguageIndex) -> list[Interpretation]:
    n = len(v)
    pieces = _piece_table(phi)
    found = []
    for i in range(b):
        blocks = -(-(i + n) // b)
        choices = []
        for t in range(blocks):
            lo, hi = max(0, t * b - i), min(n, (t + 1) * b - i)
            cand = pieces.get((lo + i - t * b, v[lo:hi]))
            if cand is None:
                break
            choices.append(cand)
        else:
            j = blocks * b - i - n
            for anc in itertools.product(*choices):
                if anc in index:
                    found.append(Interpretation(anc, i, j))
    return sorted(found)


def solve_base_frequencies(phi: Morphism, index: LanguageIndex, max_len: int,
                           prof: MorphismProfile | None = None) -> dict[Word, Fraction]:
    """Exact frequencies of all factors of length ``1 .. max_len``.

    The system is over-determined on purpose; an inconsistency or a free
    variable means the language or the morphism data is wrong, and raises
    :class:`~substfreq.linalg.LinearSystemError`.
    """
    prof = prof or profile(phi)
    b = prof.uniform_length
    letters = prof.require_frequencies()
    variables = [w for n in range(1, max_len + 1) for w in index.sorted_factors(n)]
    system = SparseSystem(variables)
    for a, x in letters.items():
        if (a,) in index:
            system.add_row({(a,): 1}, x, f"letter {a}")
    for n in range(1, max_len + 1):
        level = index.sorted_factors(n)
        system.add_row({w: 1 for w in level}, 1, f"normalize length {n}")
        for v in level:
            if n >= 2:
                coeffs: dict[Word, Fraction] = {v: Fraction(1)}
                for s in _interpretations(phi, b, v, index):
                    coeffs[s.ancestor] = coeffs.get(s.ancestor, 0) - Fraction(1, b)
                system.add_row(coeffs, 0, f"ancestors of {v}")
            if n < max_len:
                left = {(a,) + v: -1 for a in index.left_extensions(v)}
                right = {v + (a,): -1 for a in index.right_extensions(v)}
                system.add_row({v: 1, **left}, 0, f"left Kirchhoff at {v}")
                system.add_row({v: 1, **right}, 0, f"right Kirchhoff at {v}")
    values = system.solve()
    bad = [w for w, x in values.items() if x <= 0]
    if bad:
        raise ArithmeticError(f"non-positive frequency for {bad[0]}")
    return values


def synchronization_points(ctx: FridContext, w: Word) -> frozenset[int]:
    """Cut positions ``c`` (``0 <= c <= len(w)``) that fall on an image boundary
    in every occurrence of ``w`` within the context's prefix."""
    w = tuple(w)
    classes = ctx.alignment_classes(len(w)).get(w)
    if classes is None:
        raise LanguageError(f"{w!r} does not occur in the prefix")
    if len(classes) != 1:
        return frozenset()
    (r,) = classes
    return frozenset(c for c in range(len(w) + 1) if (r + c) % ctx.b == 0)


def verify_circularity(ctx: FridContext, L: int, check_up_to: int) -> CircularityReport:
    """Check that every factor with length in ``[L, check_up_to]`` has a synchronization point."""
    if L < 1:
        raise ValueError("L must be positive")
    report = CircularityReport(L, check_up_to)
    for n in range(L, check_up_to + 1):
        for w, classes in sorted(ctx.alignment_classes(n).items()):
            report.checked += 1
            if len(classes) != 1:
                report.counterexamples.append(w)
    return report


def interpretations(ctx: FridContext, v: Word) -> list[Interpretation]:
    return ctx.interpretations(v)


def base_frequencies(ctx: FridContext) -> dict[Word, Fraction]:
    return ctx.base_frequencies


def frequency_multiset(ctx: FridContext, n: int) -> Counter:
    return ctx.frequency_multiset(n)


def gtm_context(b: int, m: int, **kwargs) -> FridContext:
    """Context for the generalized Thue-Morse word: circular with delay ``2b``
    unless the word is periodic."""
    phi = gtm_morphism(b, m)
    delay = None if (b - 1) % m == 0 else 2 * b
    return FridContext(phi, 0, delay, **kwargs)
