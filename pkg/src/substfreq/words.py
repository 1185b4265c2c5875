"""Letters, finite words and morphisms on a cyclic alphabet.

Words are plain tuples of ints. Every letter lies in ``range(m)`` for the
alphabet size ``m`` of the morphism in play; arithmetic on letters is done
modulo ``m`` by the callers that need it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Letter = int
Word = tuple[int, ...]

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def word(letters: Iterable[int] | str) -> Word:
    """Build a word from an iterable of ints or a digit string such as ``"0110"``."""
    if isinstance(letters, str):
        return parse_word(letters)
    return tuple(int(a) for a in letters)


def parse_word(text: str) -> Word:
    try:
        return tuple(_DIGITS.index(ch) for ch in text.strip().lower())
    except ValueError:
        raise ValueError(f"not a word over base-36 digits: {text!r}") from None


def format_word(w: Sequence[int]) -> str:
    return "".join(_DIGITS[a] for a in w)


@dataclass(frozen=True)
class Morphism:
    """A morphism given by the images of the letters ``0 .. m-1``."""

    alphabet_size: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError("alphabet size must be positive")
        if len(self.images) != self.alphabet_size:
            raise ValueError(
                f"expected {self.alphabet_size} images, got {len(self.images)}")
        if self.alphabet_size > len(_DIGITS):
            raise ValueError("alphabets larger than 36 letters are not supported")
        for a, img in enumerate(self.images):
            if not img:
                raise ValueError(f"image of letter {a} is empty")
            if any(not 0 <= c < self.alphabet_size for c in img):
                raise ValueError(f"image of letter {a} leaves the alphabet")

    @classmethod
    def from_images(cls, images: Sequence[Iterable[int] | str]) -> "Morphism":
        imgs = tuple(word(img) for img in images)
        return cls(len(imgs), imgs)

    def __call__(self, w: Sequence[int]) -> Word:
        return apply(self, w)

    @property
    def uniform_length(self) -> int | None:
        lengths = {len(img) for img in self.images}
        return lengths.pop() if len(lengths) == 1 else None

    def __str__(self):
        return ", ".join(f"{_DIGITS[a]}->{format_word(img)}"
                         for a, img in enumerate(self.images))


def gtm_morphism(b: int, m: int) -> Morphism:
    """The generalized Thue-Morse morphism ``k -> k (k+1) ... (k+b-1) mod m``."""
    if b < 2:
        raise ValueError(f"b must be at least 2, got {b}")
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    return Morphism(m, tuple(tuple((k + i) % m for i in range(b)) for k in range(m)))


def _check_alphabet(phi: Morphism, w: Sequence[int]) -> None:
    for a in w:
        if not 0 <= a < phi.alphabet_size:
            raise ValueError(f"letter {a} is outside the alphabet of size {phi.alphabet_size}")


def apply(phi: Morphism, w: Sequence[int]) -> Word:
    _check_alphabet(phi, w)
    out: list[int] = []
    for a in w:
        out.extend(phi.images[a])
    return tuple(out)


def _check_prolongable(phi: Morphism, seed: int) -> None:
    _check_alphabet(phi, (seed,))
    img = phi.images[seed]
    if img[0] != seed or len(img) < 2:
        raise ValueError(f"morphism is not prolongable on letter {seed}")


def fixed_point_array(phi: Morphism, seed: int, length: int) -> np.ndarray:
    """Length-``length`` prefix of the fixed point starting in ``seed`` as a uint8 array."""
    _check_prolongable(phi, seed)
    if length < 0:
        raise ValueError("length must be non-negative")
    b = phi.uniform_length
    u = np.array([seed], dtype=np.uint8)
    if b is not None:
        table = np.array(phi.images, dtype=np.uint8)
        while len(u) < length:
            # only the letters whose images land inside the prefix are expanded
            need = -(-length // b)
            u = table[u[:need]].ravel()
        return u[:length].copy()
    while len(u) < length:
        u = np.concatenate([np.array(phi.images[a], dtype=np.uint8) for a in u])
    return u[:length].copy()


def fixed_point_prefix(phi: Morphism, seed: int, length: int) -> Word:
    return tuple(int(a) for a in fixed_point_array(phi, seed, length))


def count_occurrences(text: Sequence[int], pattern: Sequence[int]) -> int:
    """Number of (possibly overlapping) occurrences of ``pattern`` in ``text``."""
    if len(pattern) == 0:
        raise ValueError("pattern must be non-empty")
    if any(a > 255 or a < 0 for a in pattern):
        return 0
    hay = bytes(np.asarray(text, dtype=np.uint8)) if len(text) else b""
    needle = bytes(pattern)
    count = 0
    pos = hay.find(needle)
    while pos != -1:
        count += 1
        pos = hay.find(needle, pos + 1)
    return count
