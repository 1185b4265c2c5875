"""The dihedral group of letter-affine symmetries and the frequency upper bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .language import LanguageIndex
from .words import Word

FrequencySource = Callable[[Word], Fraction]


class SymmetryError(ArithmeticError):
    pass


@dataclass(frozen=True, order=True)
class GroupElement:
    """``Pi_x: k -> x + k`` (a morphism) or ``Psi_x: k -> x - k`` (an antimorphism), mod ``m``."""

    antimorphic: bool
    shift: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "shift", self.shift % self.m)

    def letter(self, k: int) -> int:
        return (self.shift - k if self.antimorphic else self.shift + k) % self.m

    def __call__(self, w: Sequence[int]) -> Word:
        return apply_element(self, w)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __str__(self):
        return f"{'Psi' if self.antimorphic else 'Pi'}_{self.shift}"


def Pi(x: int, m: int) -> GroupElement:
    return GroupElement(False, x, m)


def Psi(x: int, m: int) -> GroupElement:
    return GroupElement(True, x, m)


def dihedral_group(m: int) -> list[GroupElement]:
    return [Pi(x, m) for x in range(m)] + [Psi(x, m) for x in range(m)]


def apply_element(g: GroupElement, w: Sequence[int]) -> Word:
    image = tuple(g.letter(k) for k in w)
    return image[::-1] if g.antimorphic else image


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The element ``g . h`` (apply ``h`` first)."""
    if g.m != h.m:
        raise ValueError("elements act on different alphabets")
    m = g.m
    if not g.antimorphic:
        return GroupElement(h.antimorphic, g.shift + h.shift, m)
    if not h.antimorphic:
        return Psi(g.shift - h.shift, m)
    return Pi(g.shift - h.shift, m)


def verify_invariance(idx: LanguageIndex, group: Iterable[GroupElement], n: int) -> bool:
    level = idx.factors(n)
    return all(g(w) in level for g in group for w in level)


def frequency_orbits(idx: LanguageIndex, freqs: FrequencySource,
                     group: Sequence[GroupElement], n: int) -> list[list[Word]]:
    """Orbits of the length-``n`` factors; raises :class:`SymmetryError` if an orbit
    mixes frequencies or leaves the language."""
    level = idx.factors(n)
    seen: set[Word] = set()
    orbits = []
    for w in sorted(level):
        if w in seen:
            continue
        orbit = sorted({g(w) for g in group})
        outside = [u for u in orbit if u not in level]
        if outside:
            raise SymmetryError(f"{outside[0]} is an image of {w} but not a factor")
        values = {freqs(u) for u in orbit}
        if len(values) != 1:
            raise SymmetryError(f"orbit of {w} carries frequencies {sorted(values)}")
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def is_theta_palindrome(w: Word, group: Iterable[GroupElement]) -> bool:
    return any(g.antimorphic and g(w) == tuple(w) for g in group)


@dataclass(frozen=True)
class UpperBoundReport:
    n: int
    complexity_gap: int
    group_size: int
    bispecial: int
    bispecial_palindromes: int
    bound: Fraction
    observed: int

    @property
    def strict(self) -> bool:
        return self.observed < self.bound

    def as_dict(self) -> dict:
        return {"n": self.n, "gap": self.complexity_gap, "groupSize": self.group_size,
                "X": self.bispecial, "Y": self.bispecial_palindromes,
                "bound": f"{self.bound.numerator}/{self.bound.denominator}",
                "observed": self.observed}


def upper_bound_report(idx: LanguageIndex, freqs: FrequencySource,
                       group: Sequence[GroupElement], n: int) -> UpperBoundReport:
    """Compare the number of distinct frequencies of length-``n+1`` factors with
    ``(4 (C(n+1) - C(n)) + #G - X - Y) / #G``."""
    gap = idx.complexity(n + 1) - idx.complexity(n)
    bs = idx.bispecial_factors(n)
    X = len(bs)
    Y = sum(is_theta_palindrome(w, group) for w in bs)
    G = len(group)
    bound = Fraction(4 * gap + G - X - Y, G)
    observed = len({freqs(e) for e in idx.factors(n + 1)})
    return UpperBoundReport(n, gap, G, X, Y, bound, observed)
