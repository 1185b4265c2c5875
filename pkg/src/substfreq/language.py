"""Factor sets, extensions and special factors of a fixed point."""

from __future__ import annotations

import enum
from functools import cached_property

from .empirical import iter_window_classes
from .words import Morphism, Word, fixed_point_array


class LanguageError(LookupError):
    pass


class LanguageNotStabilizedError(LanguageError):
    pass


class SpecialClass(enum.Enum):
    NONE = "none"
    LS = "LS"
    RS = "RS"
    BS = "BS"
    WEAK_BS = "weak-BS"

    @property
    def is_left_special(self):
        return self in (SpecialClass.LS, SpecialClass.BS, SpecialClass.WEAK_BS)

    @property
    def is_right_special(self):
        return self in (SpecialClass.RS, SpecialClass.BS, SpecialClass.WEAK_BS)

    @property
    def is_bispecial(self):
        return self in (SpecialClass.BS, SpecialClass.WEAK_BS)


class LanguageIndex:
    """Factors of the fixed point of ``morphism`` starting in ``seed``.

    Lengths up to ``max_len`` come from scanning a fixed-point prefix.
    Longer lengths, when asked for, are closed under the morphism: every
    factor of length ``n`` sits inside the image of a factor of length
    ``(n - 1) // b + 2``.
    """

    def __init__(self, morphism: Morphism, seed: int, factors: dict[int, frozenset[Word]],
                 prefix_len: int):
        self.morphism = morphism
        self.seed = seed
        self.max_len = max(factors)
        self.prefix_len = prefix_len
        self._factors = dict(factors)

    def factors(self, n: int) -> frozenset[Word]:
        if n < 0:
            raise ValueError("length must be non-negative")
        if n == 0:
            return frozenset({()})
        if n not in self._factors:
            self._factors[n] = self._close(n)
        return self._factors[n]

    def _close(self, n: int) -> frozenset[Word]:
        b = self.morphism.uniform_length
        if b is None:
            raise LanguageError(f"length {n} exceeds the indexed depth {self.max_len}")
        r = (n - 1) // b + 2
        if r >= n:
            raise LanguageError(f"length {n} cannot be reached by closure")
        images = self.morphism.images
        out = set()
        for a in self.factors(r):
            img = [c for x in a for c in images[x]]
            for i in range(len(img) - n + 1):
                out.add(tuple(img[i:i + n]))
        return frozenset(out)

    def complexity(self, n: int) -> int:
        return len(self.factors(n))

    def __contains__(self, w) -> bool:
        return tuple(w) in self.factors(len(w))

    def require(self, w: Word) -> Word:
        w = tuple(w)
        if w not in self:
            raise LanguageError(f"{w!r} is not a factor")
        return w

    def sorted_factors(self, n: int) -> list[Word]:
        return sorted(self.factors(n))

    @cached_property
    def alphabet(self) -> tuple[int, ...]:
        return tuple(sorted(a for (a,) in self.factors(1)))

    def left_extensions(self, w: Word) -> frozenset[int]:
        w = self.require(w)
        longer = self.factors(len(w) + 1)
        return frozenset(a for a in self.alphabet if (a,) + w in longer)

    def right_extensions(self, w: Word) -> frozenset[int]:
        w = self.require(w)
        longer = self.factors(len(w) + 1)
        return frozenset(a for a in self.alphabet if w + (a,) in longer)

    def special_factors(self, n: int) -> list[Word]:
        return [w for w in self.sorted_factors(n)
                if len(self.left_extensions(w)) > 1 or len(self.right_extensions(w)) > 1]

    def bispecial_factors(self, n: int) -> list[Word]:
        return [w for w in self.sorted_factors(n)
                if len(self.left_extensions(w)) > 1 and len(self.right_extensions(w)) > 1]


def build_index(phi: Morphism, seed: int, max_len: int, initial_prefix: int | None = None,
                prefix_cap: int = 1 << 24) -> LanguageIndex:
    """Index all factors of length ``<= max_len``.

    The prefix is doubled until the number of distinct length-``max_len``
    factors is the same for two consecutive prefix lengths.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    P = initial_prefix or max(256, 32 * max_len)
    previous = None
    while True:
        if P > prefix_cap:
            raise LanguageNotStabilizedError(
                f"factors of length {max_len} did not stabilize within a prefix of {prefix_cap}")
        text = fixed_point_array(phi, seed, P)
        classes = list(iter_window_classes(text, max_len))
        count = len(classes[-1]) if len(classes) == max_len else None
        if count is not None and count == previous:
            break
        previous = count
        P *= 2
    factors = {c.length: frozenset(c.words(text)) for c in classes}
    return LanguageIndex(phi, seed, factors, P)


def classify(idx: LanguageIndex, w: Word) -> SpecialClass:
    w = tuple(w)
    if len(w) + 2 > idx.max_len:
        raise LanguageError(
            f"classifying a factor of length {len(w)} needs index depth {len(w) + 2}")
    idx.require(w)
    left = idx.left_extensions(w)
    right = idx.right_extensions(w)
    if len(left) > 1 and len(right) > 1:
        both = idx.factors(len(w) + 2)
        if all(sum((a,) + w + (c,) in both for c in right) == 1 for a in left):
            return SpecialClass.WEAK_BS
        return SpecialClass.BS
    if len(left) > 1:
        return SpecialClass.LS
    if len(right) > 1:
        return SpecialClass.RS
    return SpecialClass.NONE
