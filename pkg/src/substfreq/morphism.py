"""Classification of morphisms and exact letter frequencies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import LinearSystemError, nullspace_vector
from .words import Morphism


class NotPrimitiveError(ValueError):
    pass


@dataclass(frozen=True)
class MorphismProfile:
    incidence: tuple[tuple[int, ...], ...]
    uniform_length: int | None
    is_marked: bool
    is_primitive: bool
    dominant_eigenvalue: Fraction | None
    letter_frequencies: dict[int, Fraction] | None

    def require_frequencies(self) -> dict[int, Fraction]:
        if self.letter_frequencies is None:
            if not self.is_primitive:
                raise NotPrimitiveError("letter frequencies are undefined: morphism is not primitive")
            raise NotPrimitiveError("letter frequencies are only computed for uniform morphisms")
        return self.letter_frequencies


def incidence_matrix(phi: Morphism) -> tuple[tuple[int, ...], ...]:
    """``M[i][j]`` is the number of occurrences of letter ``i`` in ``phi(j)``."""
    m = phi.alphabet_size
    return tuple(tuple(phi.images[j].count(i) for j in range(m)) for i in range(m))


def is_primitive_matrix(matrix: Sequence[Sequence[int]]) -> bool:
    d = len(matrix)
    if any(len(row) != d for row in matrix):
        raise ValueError("matrix must be square")
    if d == 0:
        return False
    # only the zero pattern matters; Wielandt bounds the exponent by d^2 - 2d + 2
    base = [[matrix[i][j] > 0 for j in range(d)] for i in range(d)]
    power = base
    for _ in range(d * d - 2 * d + 2):
        if all(all(row) for row in power):
            return True
        power = [[any(power[i][k] and base[k][j] for k in range(d)) for j in range(d)]
                 for i in range(d)]
    return all(all(row) for row in power)


def is_marked(phi: Morphism) -> bool:
    firsts = [img[0] for img in phi.images]
    lasts = [img[-1] for img in phi.images]
    return len(set(firsts)) == len(firsts) and len(set(lasts)) == len(lasts)


def profile(phi: Morphism) -> MorphismProfile:
    M = incidence_matrix(phi)
    b = phi.uniform_length
    primitive = is_primitive_matrix(M)
    eigenvalue = Fraction(b) if b is not None else None
    freqs = None
    if primitive and b is not None:
        m = phi.alphabet_size
        shifted = [[Fraction(M[i][j]) - (b if i == j else 0) for j in range(m)]
                   for i in range(m)]
        try:
            vec = nullspace_vector(shifted)
        except LinearSystemError as exc:  # pragma: no cover - excluded by Perron-Frobenius
            raise ArithmeticError(f"eigenvector solve failed: {exc}") from exc
        freqs = {a: vec[a] for a in range(m)}
    return MorphismProfile(M, b, is_marked(phi), primitive, eigenvalue, freqs)
