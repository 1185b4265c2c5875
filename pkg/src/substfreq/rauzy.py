"""Frequency-labelled Rauzy graphs and their reductions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from .language import LanguageError, LanguageIndex
from .words import Morphism, Word, apply, format_word

FrequencySource = Callable[[Word], Fraction]


class PeriodicGraphError(ValueError):
    """The graph has no special vertex, so the underlying word is periodic."""


class GraphStructureError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Edge:
    source: Word
    target: Word
    word: Word
    frequency: Fraction


@dataclass
class RauzyGraph:
    order: int
    vertices: dict[Word, Fraction]
    edges: list[Edge] = field(default_factory=list)
    reduced: bool = False

    def out_edges(self, v: Word) -> list[Edge]:
        return [e for e in self.edges if e.source == v]

    def in_edges(self, v: Word) -> list[Edge]:
        return [e for e in self.edges if e.target == v]

    def edge_frequencies(self) -> set[Fraction]:
        return {e.frequency for e in self.edges}


ReducedRauzyGraph = RauzyGraph


def rauzy(idx: LanguageIndex, freqs: FrequencySource, n: int) -> RauzyGraph:
    if n < 1:
        raise ValueError("order must be positive")
    if n + 1 > idx.max_len:
        raise LanguageError(f"order {n} needs index depth {n + 1}, have {idx.max_len}")
    vertices = {w: freqs(w) for w in idx.sorted_factors(n)}
    edges = [Edge(e[:-1], e[1:], e, freqs(e)) for e in idx.sorted_factors(n + 1)]
    return RauzyGraph(n, vertices, edges)


def reduce(g: RauzyGraph) -> RauzyGraph:
    """Contract every chain through vertices with one in- and one out-edge."""
    succ: dict[Word, list[Edge]] = {v: [] for v in g.vertices}
    indeg = dict.fromkeys(g.vertices, 0)
    for e in g.edges:
        succ[e.source].append(e)
        indeg[e.target] += 1
    special = [v for v in g.vertices if indeg[v] > 1 or len(succ[v]) > 1]
    if not special:
        raise PeriodicGraphError(f"Rauzy graph of order {g.order} has no special vertex")
    special_set = set(special)
    edges = []
    for v in special:
        for first in succ[v]:
            path = list(first.word)
            target = first.target
            steps = 0
            while target not in special_set:
                nxt = succ[target]
                if len(nxt) != 1:
                    raise GraphStructureError(f"vertex {target} has no successor")
                path.append(nxt[0].word[-1])
                target = nxt[0].target
                steps += 1
                if steps > len(g.vertices):
                    raise GraphStructureError("cycle of non-special vertices")
            # every edge on a simple path carries the path's frequency
            edges.append(Edge(v, target, tuple(path), first.frequency))
    return RauzyGraph(g.order, {v: g.vertices[v] for v in special}, sorted(edges), reduced=True)


def verify_kirchhoff(g: RauzyGraph) -> list[str]:
    """Vertices where incoming or outgoing frequency mass differs from the vertex frequency."""
    inflow = dict.fromkeys(g.vertices, Fraction(0))
    outflow = dict.fromkeys(g.vertices, Fraction(0))
    for e in g.edges:
        outflow[e.source] += e.frequency
        inflow[e.target] += e.frequency
    problems = []
    for v in sorted(g.vertices):
        rho = g.vertices[v]
        if inflow[v] != rho:
            problems.append(f"{format_word(v)}: in {inflow[v]} != {rho}")
        if outflow[v] != rho:
            problems.append(f"{format_word(v)}: out {outflow[v]} != {rho}")
    return problems


def perturb(g: RauzyGraph, index: int = 0, delta: Fraction = Fraction(1, 1000)) -> RauzyGraph:
    """Copy of ``g`` with one edge label shifted by ``delta``."""
    edges = list(g.edges)
    edges[index] = replace(edges[index], frequency=edges[index].frequency + delta)
    return RauzyGraph(g.order, dict(g.vertices), edges, g.reduced)


def image_graph(g: RauzyGraph, phi: Morphism) -> RauzyGraph:
    """Apply ``phi`` to every vertex and path word and divide every frequency by ``b``."""
    b = phi.uniform_length
    if b is None:
        raise ValueError("image graphs need a uniform morphism")
    vertices = {apply(phi, v): rho / b for v, rho in g.vertices.items()}
    edges = sorted(Edge(apply(phi, e.source), apply(phi, e.target), apply(phi, e.word),
                        e.frequency / b) for e in g.edges)
    return RauzyGraph(g.order * b, vertices, edges, g.reduced)


def total_mass(g: RauzyGraph) -> Fraction:
    """Sum over edges of frequency times the number of unreduced edges they stand for."""
    return sum((e.frequency * (len(e.word) - g.order) for e in g.edges), Fraction(0))


def _q(word: Word) -> str:
    return '"' + format_word(word) + '"'


def export_dot(g: RauzyGraph) -> str:
    name = "reduced_rauzy" if g.reduced else "rauzy"
    lines = [f"digraph {name}_{g.order} {{", "  rankdir=LR;"]
    for v in sorted(g.vertices):
        lines.append(f'  {_q(v)} [label="{format_word(v)} [{_frac(g.vertices[v])}]"];')
    for e in sorted(g.edges):
        lines.append(f'  {_q(e.source)} -> {_q(e.target)} '
                     f'[label="{format_word(e.word)} [{_frac(e.frequency)}]"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def graph_to_dict(g: RauzyGraph) -> dict:
    return {
        "order": g.order,
        "reduced": g.reduced,
        "vertices": [{"word": format_word(v), "freq": _frac(g.vertices[v])}
                     for v in sorted(g.vertices)],
        "edges": [{"src": format_word(e.source), "dst": format_word(e.target),
                   "word": format_word(e.word), "freq": _frac(e.frequency)}
                  for e in sorted(g.edges)],
    }


def export_json(g: RauzyGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"
