"""Closed-form factor frequencies of the generalized Thue-Morse words ``t_{b,m}``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .words import Word


class PeriodicWordError(ValueError):
    pass


@dataclass(frozen=True)
class ClosedFormContext:
    b: int
    m: int
    q: int
    periodic: bool
    f: Fraction | None

    def letter(self, k: int) -> int:
        return k % self.m

    def run(self, start: int, length: int) -> Word:
        """``start (start+1) ... (start+length-1)`` reduced mod ``m``."""
        return tuple((start + i) % self.m for i in range(length))


def context(b: int, m: int) -> ClosedFormContext:
    if b < 2 or m < 1:
        raise ValueError(f"need b >= 2 and m >= 1, got b={b}, m={m}")
    q = next(k for k in range(1, m + 1) if (k * (b - 1)) % m == 0)
    periodic = (b - 1) % m == 0
    f = None if periodic else Fraction(b ** (q - 1), m) * Fraction(b - 1, b ** q - 1)
    return ClosedFormContext(b, m, q, periodic, f)


@dataclass
class GammaFrequencies:
    """Frequencies of the representative vertices and edges of the reduced Rauzy graph of order n.

    Edges are keyed by the length-``n+1`` factor that ends (or, for the edge
    leaving the left special vertex, starts) the corresponding simple path;
    all other vertices and edges are images of these under the symmetries.
    """

    n: int
    vertices: dict[Word, Fraction] = field(default_factory=dict)
    edges: dict[Word, Fraction] = field(default_factory=dict)
    bispecial: list[Word] = field(default_factory=list)

    def edge_values(self) -> set[Fraction]:
        return set(self.edges.values())

    def bispecial_values(self) -> set[Fraction]:
        return {self.vertices[w] for w in self.bispecial}


def gamma_small_frequencies(ctx: ClosedFormContext, n: int) -> GammaFrequencies:
    """Vertex and edge frequencies of the reduced Rauzy graph of order ``1 <= n <= 2b-1``."""
    if ctx.periodic:
        raise PeriodicWordError(f"t_{{{ctx.b},{ctx.m}}} is periodic")
    b, m, q, f = ctx.b, ctx.m, ctx.q, ctx.f
    if not 1 <= n <= 2 * b - 1:
        raise ValueError(f"n must lie in [1, {2 * b - 1}], got {n}")
    inv_m = Fraction(1, m)
    out = GammaFrequencies(n)
    w = ctx.run(0, n)
    out.bispecial.append(w)
    if n <= b:
        out.vertices[w] = inv_m if n == 1 else (n - 1) * f - (n - 2) * inv_m
        out.edges[(ctx.letter(-1),) + w] = n * f - (n - 1) * inv_m
        for k in range(1, q):
            out.edges[(ctx.letter(-1 + k * (b - 1)),) + w] = f / b ** k
        return out
    # b < n < 2b: the bispecial vertex and the left special vertex v
    out.vertices[w] = f / b ** (q - 1) - (n - b - 1) * f / b ** q
    out.edges[(ctx.letter(-1),) + w] = f / b ** (q - 1) - (n - b) * f / b ** q
    out.edges[(ctx.letter(b - 2),) + w] = f / b ** q
    v = ctx.run(0, b) + ctx.run(1, n - b)
    out.vertices[v] = f / b
    out.edges[v + (ctx.letter(n + 1 - b),)] = f / b
    out.edges[(ctx.letter(-1),) + v] = f / b ** q
    out.edges[(ctx.letter(b - 2),) + v] = (2 * f - inv_m) / b
    for k in range(2, q):
        out.edges[(ctx.letter(-1 + k * (b - 1)),) + v] = f / b ** k
    return out


def classify_length(ctx: ClosedFormContext, N: int) -> tuple[str, int, int]:
    """Return ``(row, n, l)`` locating ``N`` in the frequency table.

    Rows are ``"N=0"``, ``"N=1"``, ``"interval-low"`` (``(n-1)b^l < N < nb^l``,
    ``3 <= n <= b``), ``"interval-high"`` (same with ``b < n < 2b``),
    ``"interval-top"`` (``(2b-1)b^l < N < 2b^(l+1)``), ``"power-low"``
    (``N = nb^l``, ``2 <= n <= b``) and ``"power-high"`` (``N = nb^l``,
    ``b < n < 2b``).
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if N <= 1:
        return (f"N={N}", N, 0)
    b = ctx.b
    # every N >= 2 lies in exactly one window [2b^l, 2b^(l+1))
    level, scale = 0, 1
    while 2 * scale * b <= N:
        level += 1
        scale *= b
    if N % scale == 0:
        n = N // scale
        return ("power-low" if n <= b else "power-high", n, level)
    n = -(-N // scale)
    if n <= b:
        return ("interval-low", n, level)
    if n <= 2 * b - 1:
        return ("interval-high", n, level)
    return ("interval-top", n, level)


def _row_values(ctx: ClosedFormContext, row: str, n: int, l: int) -> set[Fraction]:
    b, m, q, f = ctx.b, ctx.m, ctx.q, ctx.f
    inv_m = Fraction(1, m)
    s = Fraction(1, b ** l)
    if row == "N=0":
        return {inv_m}
    if row == "N=1":
        return {f / b ** k for k in range(q)}
    if row == "interval-low":
        return ({s * ((n - 1) * f - (n - 2) * inv_m), s * (n * f - (n - 1) * inv_m)}
                | {s * f / b ** k for k in range(1, q)})
    if row == "interval-high":
        return ({s * (f / b ** (q - 1) - (n - b - 1) * f / b ** q),
                 s * (f / b ** (q - 1) - (n - b) * f / b ** q),
                 s / b * (2 * f - inv_m)}
                | {s * f / b ** k for k in range(1, q + 1)})
    if row == "interval-top":
        return {s / b * (2 * f - inv_m)} | {s / b * f / b ** k for k in range(q)}
    if row == "power-low":
        return {s * (n * f - (n - 1) * inv_m)} | {s * f / b ** k for k in range(1, q)}
    if row == "power-high":
        return ({s * (f / b ** (q - 1) - (n - b) * f / b ** q), s / b * (2 * f - inv_m)}
                | {s * f / b ** k for k in range(1, q + 1)})
    raise ValueError(f"unknown row {row!r}")


def admissible_rows(ctx: ClosedFormContext, N: int) -> list[tuple[str, int, int]]:
    """Every ``(row, n, l)`` whose condition ``N`` satisfies, read literally off the table."""
    b = ctx.b
    found = []
    if N <= 1:
        return [(f"N={N}", N, 0)]
    l, scale = 0, 1
    while scale <= N:
        for n in range(2, 2 * b):
            if N == n * scale:
                found.append(("power-low" if n <= b else "power-high", n, l))
        for n in range(3, 2 * b):
            if (n - 1) * scale < N < n * scale:
                found.append(("interval-low" if n <= b else "interval-high", n, l))
        if (2 * b - 1) * scale < N < 2 * b * scale:
            found.append(("interval-top", 2 * b, l))
        l, scale = l + 1, scale * b
    return found


def frequency_row(ctx: ClosedFormContext, N: int) -> tuple[str, set[Fraction]]:
    if ctx.periodic:
        return ("periodic", {Fraction(1, ctx.m)})
    row, n, l = classify_length(ctx, N)
    values = _row_values(ctx, row, n, l)
    for other in admissible_rows(ctx, N):
        if _row_values(ctx, *other) != values:
            raise ArithmeticError(f"rows {(row, n, l)} and {other} disagree at N={N}")
    return row, values


def frequency_set(ctx: ClosedFormContext, N: int) -> set[Fraction]:
    """Distinct frequencies of the factors of length ``N + 1``."""
    return frequency_row(ctx, N)[1]
