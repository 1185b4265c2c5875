"""Three-way agreement between closed form, decomposition and brute-force counting."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import closed_form
from .empirical import DEFAULT_PREFIX, iter_window_classes, window_counts
from .frid import FridContext, gtm_context
from .words import fixed_point_array

log = logging.getLogger(__name__)

DEFAULT_TOLERANCE = Fraction(1, 1000)


@dataclass
class LengthCheck:
    N: int
    row: str
    closed: set[Fraction]
    frid: Counter
    empirical_error: Fraction | None = None
    windows_seen: int | None = None
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "row": self.row,
            "values": _fracs(sorted(self.closed, reverse=True)),
            "multiset": [[_frac(v), c] for v, c in sorted(self.frid.items(), reverse=True)],
            "empiricalError": None if self.empirical_error is None else float(self.empirical_error),
            "ok": self.ok,
            "problems": self.problems,
        }


@dataclass
class VerificationReport:
    b: int
    m: int
    max_n: int
    prefix_len: int
    tolerance: Fraction
    checks: list[LengthCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def first_problem(self) -> str | None:
        for c in self.checks:
            if c.problems:
                return f"N={c.N}: {c.problems[0]}"
        return None

    @property
    def max_empirical_error(self) -> Fraction:
        return max((c.empirical_error for c in self.checks if c.empirical_error is not None),
                   default=Fraction(0))


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _fracs(xs) -> list[str]:
    return [_frac(x) for x in xs]


def verify_gtm(b: int, m: int, max_n: int, prefix_len: int = DEFAULT_PREFIX,
               tolerance: Fraction = DEFAULT_TOLERANCE, perturb: bool = False,
               ctx: FridContext | None = None, threads: int = 1) -> VerificationReport:
    """Check every ``N <= max_n`` for ``t_{b,m}``.

    For each ``N``: the closed-form set must equal the distinct values of the
    decomposition multiset, the multiset must sum to one, and every length
    ``N + 1`` window of the prefix must be within ``tolerance`` of its exact
    frequency. The exact per-word frequencies of the windows seen must also
    rebuild the multiset, which ties the words to the values.

    With ``threads > 1`` the windows of each length are counted in
    overlapping chunks instead of by one incremental scan.

    ``perturb`` shifts one multiset entry at ``N = max_n // 2`` to exercise
    the failure path.
    """
    cf = closed_form.context(b, m)
    ctx = ctx or gtm_context(b, m)
    report = VerificationReport(b, m, max_n, prefix_len, Fraction(tolerance))
    text = fixed_point_array(ctx.morphism, ctx.seed, prefix_len)
    classes_by_len = iter_window_classes(text, max_n + 1)
    for N in range(max_n + 1):
        row, closed = closed_form.frequency_row(cf, N)
        multiset = ctx.frequency_multiset(N)
        if perturb and N == max_n // 2:
            top = max(multiset)
            multiset[top] -= 1
            if not multiset[top]:
                del multiset[top]
            multiset[top + Fraction(1, 1000)] += 1
        check = LengthCheck(N, row, closed, multiset)
        distinct = set(multiset)
        if distinct != closed:
            check.problems.append(
                f"closed form {_fracs(sorted(closed))} != decomposition {_fracs(sorted(distinct))}")
        mass = sum((v * c for v, c in multiset.items()), Fraction(0))
        if mass != 1:
            check.problems.append(f"multiset sums to {mass}")
        if threads > 1:
            counted = window_counts(text, N + 1, threads=threads) if N < len(text) else {}
            words, counts = list(counted), list(counted.values())
        else:
            classes = next(classes_by_len, None)
            ok_len = classes is not None and classes.length == N + 1
            words = classes.words(text) if ok_len else []
            counts = [int(c) for c in classes.counts] if ok_len else []
        if words:
            total = len(text) - N
            exact = [ctx.frequency(w) for w in words]
            err = max(abs(Fraction(c, total) - x) for c, x in zip(counts, exact))
            check.empirical_error = err
            check.windows_seen = len(words)
            if err > tolerance:
                check.problems.append(f"empirical error {float(err):.3g} exceeds {float(tolerance)}")
            if Counter(exact) != multiset:
                check.problems.append("per-word frequencies of the prefix windows "
                                      "do not rebuild the decomposition multiset")
        report.checks.append(check)
        if check.problems:
            log.info("N=%d: %s", N, "; ".join(check.problems))
    return report
