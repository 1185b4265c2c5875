"""Exact sparse linear systems over the rationals.

Rows are scaled to integers and eliminated fraction-free: combining two rows
multiplies by the pivots instead of dividing, and every row is divided by the
gcd of its entries so coefficients stay small. Only back-substitution touches
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Mapping, Sequence


class LinearSystemError(ArithmeticError):
    """Raised when a system is inconsistent or does not have a unique solution."""

    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = list(rows)


class InconsistentSystemError(LinearSystemError):
    pass


class RankDeficientError(LinearSystemError):
    pass


def _integer_row(coeffs: Mapping[int, Fraction | int], rhs: Fraction | int):
    den = 1
    for c in coeffs.values():
        den = lcm(den, Fraction(c).denominator)
    den = lcm(den, Fraction(rhs).denominator)
    row = {}
    for k, c in coeffs.items():
        v = Fraction(c) * den
        if v:
            row[k] = v.numerator
    return row, (Fraction(rhs) * den).numerator


def _normalize(row: dict[int, int], rhs: int):
    g = rhs
    for c in row.values():
        g = gcd(g, c)
    if g > 1:
        row = {k: c // g for k, c in row.items()}
        rhs //= g
    return row, rhs


class SparseSystem:
    """Incrementally eliminated system ``sum(coeff * x[var]) = rhs``.

    Variables are arbitrary hashables; their order of first appearance in
    ``variables`` fixes the elimination order (later variables are eliminated
    first), so passing them sorted by word length keeps the frequency systems
    close to triangular.
    """

    def __init__(self, variables: Sequence[Hashable]):
        self.variables = list(variables)
        self._index = {v: i for i, v in enumerate(self.variables)}
        if len(self._index) != len(self.variables):
            raise ValueError("duplicate variables")
        # pivot column -> (row, rhs, label)
        self._pivots: dict[int, tuple[dict[int, int], int, str]] = {}
        self.n_rows = 0

    def add_row(self, coeffs: Mapping[Hashable, Fraction | int], rhs=0, label: str = ""):
        self.n_rows += 1
        try:
            indexed = {}
            for v, c in coeffs.items():
                i = self._index[v]
                indexed[i] = indexed.get(i, 0) + Fraction(c)
        except KeyError as exc:
            raise KeyError(f"row {label!r} uses unknown variable {exc.args[0]!r}") from None
        row, r = _integer_row({i: c for i, c in indexed.items() if c}, rhs)
        row, r = _normalize(row, r)
        while row:
            lead = max(row)
            pivot = self._pivots.get(lead)
            if pivot is None:
                if row[lead] < 0:
                    row = {k: -c for k, c in row.items()}
                    r = -r
                self._pivots[lead] = (row, r, label)
                return
            prow, pr, _ = pivot
            a, p = row[lead], prow[lead]
            merged = {k: c * p for k, c in row.items()}
            for k, c in prow.items():
                val = merged.get(k, 0) - a * c
                if val:
                    merged[k] = val
                else:
                    merged.pop(k, None)
            row, r = _normalize(merged, r * p - a * pr)
        if r != 0:
            raise InconsistentSystemError(
                f"row {label!r} is inconsistent with the rows before it", [label])

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def solve(self) -> dict[Hashable, Fraction]:
        free = [self.variables[i] for i in range(len(self.variables))
                if i not in self._pivots]
        if free:
            shown = ", ".join(map(repr, free[:8]))
            raise RankDeficientError(
                f"solution is not unique: {len(free)} free variable(s), e.g. {shown}", free)
        values: dict[int, Fraction] = {}
        for i in sorted(self._pivots):
            row, rhs, _ = self._pivots[i]
            acc = Fraction(rhs)
            for k, c in row.items():
                if k != i:
                    acc -= c * values[k]
            values[i] = acc / row[i]
        return {self.variables[i]: values[i] for i in range(len(self.variables))}


def solve(variables, rows) -> dict[Hashable, Fraction]:
    """Solve a system given as ``(coeffs, rhs)`` or ``(coeffs, rhs, label)`` tuples."""
    system = SparseSystem(variables)
    for entry in rows:
        system.add_row(*entry)
    return system.solve()


def nullspace_vector(matrix: Sequence[Sequence[int | Fraction]], normalize_sum=True):
    """The unique (up to scale) null vector of a square matrix, scaled to sum 1.

    Raises :class:`RankDeficientError` when the null space is not one-dimensional
    and :class:`InconsistentSystemError` when it is trivial.
    """
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("matrix must be square")
    system = SparseSystem(range(n))
    for i, r in enumerate(matrix):
        system.add_row({j: c for j, c in enumerate(r) if c}, 0, f"row {i}")
    if normalize_sum:
        system.add_row({j: 1 for j in range(n)}, 1, "sum")
    sol = system.solve()
    return [sol[j] for j in range(n)]
