"""Graphs, their Markov coverings, clique complexes and Hammersley-Clifford checks.

For a graph on the index set ``I`` two coverings encode the Markov
properties of a positive law:

* ``[i, j] = {I - {j}, I - {i}}`` for a non-adjacent pair (pairwise),
* ``[i] = {I - {i}, {i} | N(i)}`` for a vertex with open neighbourhood ``N(i)`` (local).

Their meets ``A_P`` and ``A_L`` saturate to the clique complex, which is
what :func:`clique_lemma_check` verifies combinatorially and
:func:`hc_check` verifies on actual tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, NamedTuple, Sequence

from factorspace import kernels
from factorspace.covering import (
    Antichain,
    Covering,
    IndexSet,
    family_meet,
    saturate,
    split,
    top,
)
from factorspace.errors import FactorSpaceError, GraphError, TooManyVariables
from factorspace.loglin import DEFAULT_TOL, PositiveTable, member

MAX_CLIQUE_VERTICES = 24


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the labels of an index set.

    Edges are two-bit masks over the vertex labels.
    """

    vertices: IndexSet
    edges: frozenset

    def __post_init__(self):
        edges = frozenset(self.edges)
        for e in edges:
            if not isinstance(e, int) or kernels.popcount(e) != 2 or e & ~self.vertices.full:
                raise GraphError(f"invalid edge mask {e!r}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def of(cls, labels: Sequence, edges: Sequence[Sequence]) -> "Graph":
        vertices = IndexSet(tuple(labels))
        masks = set()
        for e in edges:
            e = list(e)
            if len(e) != 2:
                raise GraphError(f"edge {e!r} must join two vertices")
            if str(e[0]) == str(e[1]):
                raise GraphError(f"self-loop on {e[0]!r}")
            masks.add(vertices.mask(e))
        return cls(vertices, frozenset(masks))

    def to_dict(self) -> Dict:
        return {
            "vertices": list(self.vertices.labels),
            "edges": sorted(list(self.vertices.labels_of(e)) for e in self.edges),
        }

    @cached_property
    def adjacency(self) -> List[int]:
        adj = [0] * self.vertices.n
        for e in self.edges:
            p, q = self.vertices.positions(e)
            adj[p] |= 1 << q
            adj[q] |= 1 << p
        return adj

    def neighbours(self, i) -> int:
        """Open neighbourhood of ``i`` as a mask."""
        return self.adjacency[self.vertices.position(i)]

    def adjacent(self, i, j) -> bool:
        return bool(self.neighbours(i) & self.vertices.mask([j]))

    def non_adjacent_pairs(self) -> List[tuple]:
        labels = self.vertices.labels
        return [(p, q) for p, q in itertools.combinations(labels, 2) if not self.adjacent(p, q)]

    def is_complete(self) -> bool:
        return not self.non_adjacent_pairs()


def all_graphs(labels: Sequence) -> Iterator[Graph]:
    """Every simple graph on ``labels`` (``2^(n choose 2)`` of them)."""
    vertices = IndexSet(tuple(labels))
    pairs = [(1 << p) | (1 << q) for p, q in itertools.combinations(range(vertices.n), 2)]
    for bits in range(1 << len(pairs)):
        yield Graph(vertices, frozenset(e for k, e in enumerate(pairs) if bits >> k & 1))


def is_connected(g: Graph) -> bool:
    if g.vertices.n == 0:
        return True
    seen, frontier = 1, 1
    while frontier:
        nxt = 0
        for k in g.vertices.positions(frontier):
            nxt |= g.adjacency[k]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == g.vertices.full


def pair_cov(g: Graph, i, j) -> Covering:
    """``[i, j]``; membership in it means ``X_i`` independent of ``X_j`` given the rest."""
    if str(i) == str(j):
        raise GraphError("pair needs two distinct vertices")
    _vertex(g, i)
    _vertex(g, j)
    if g.adjacent(i, j):
        raise GraphError("vertices adjacent")
    return split(g.vertices, i, j)


def _vertex(g: Graph, i) -> int:
    try:
        return g.vertices.mask([i])
    except FactorSpaceError:
        raise GraphError(f"unknown vertex {i!r}") from None


def local_cov(g: Graph, i) -> Covering:
    """``[i] = {I - {i}, {i} | N(i)}``."""
    bit = _vertex(g, i)
    full = g.vertices.full
    return Covering._raw(g.vertices, [full & ~bit, bit | g.neighbours(i)])


def pairwise_hull(g: Graph) -> Covering:
    """Meet of ``[i, j]`` over non-adjacent pairs; ``{I}`` for a complete graph."""
    family = [pair_cov(g, i, j) for i, j in g.non_adjacent_pairs()]
    if not family:
        return top(g.vertices)
    return family_meet(family)


def local_hull(g: Graph) -> Covering:
    """Meet of ``[i]`` over all vertices."""
    if g.vertices.n == 0:
        return top(g.vertices)
    return family_meet([local_cov(g, i) for i in g.vertices.labels])


@dataclass(frozen=True)
class CliqueComplex:
    """All cliques of a graph, kept as the antichain of maximal cliques."""

    graph: Graph
    maximal: Antichain

    @cached_property
    def saturation(self) -> Covering:
        """Every clique, the empty one and singletons included."""
        return saturate(self.maximal)

    def __contains__(self, subset) -> bool:
        m = self.graph.vertices.mask(subset)
        return any(m & ~c == 0 for c in self.maximal.members)


def clique_complex(g: Graph) -> CliqueComplex:
    if g.vertices.n > MAX_CLIQUE_VERTICES:
        raise TooManyVariables(f"clique enumeration limited to {MAX_CLIQUE_VERTICES} vertices")
    return CliqueComplex(g, Antichain._raw(g.vertices, kernels.maximal_cliques(g.adjacency)))


def clique_lemma_check(g: Graph) -> bool:
    """Whether ``sat(A_P) == sat(A_L) ==`` the set of cliques (pure set algebra)."""
    cliques = clique_complex(g).saturation
    return saturate(pairwise_hull(g)) == cliques and saturate(local_hull(g)) == cliques


class MarkovResult(NamedTuple):
    holds: bool
    worst_residual: float


def _table(p) -> PositiveTable:
    return getattr(p, "table", p)


def markov_test(p, g: Graph, mode: str = "pairwise", tol: float = DEFAULT_TOL) -> MarkovResult:
    """Pairwise or local Markov property of a positive law relative to ``g``.

    Pairwise checks membership in ``[i, j]`` for each non-adjacent pair,
    local checks ``[i]`` for each vertex.  An empty family holds vacuously.
    """
    t = _table(p)
    if t.space.index_set != g.vertices:
        raise GraphError("graph vertices must equal the table's index set")
    if mode == "pairwise":
        family = [pair_cov(g, i, j) for i, j in g.non_adjacent_pairs()]
    elif mode == "local":
        family = [local_cov(g, i) for i in g.vertices.labels]
    else:
        raise FactorSpaceError(f"unknown mode {mode!r}")
    holds, worst = True, 0.0
    for c in family:
        m = member(t, c, tol)
        holds = holds and m.is_member
        worst = max(worst, m.residual)
    return MarkovResult(holds, worst)


@dataclass(frozen=True)
class HCReport:
    pairwise: bool
    local: bool
    clique: bool
    pairwise_residual: float
    local_residual: float
    clique_residual: float

    @property
    def agree(self) -> bool:
        return self.pairwise == self.local == self.clique

    def to_dict(self) -> Dict:
        return {
            "pairwise": self.pairwise,
            "local": self.local,
            "clique_factorisable": self.clique,
            "agree": self.agree,
            "residuals": {
                "pairwise": f"{self.pairwise_residual:.5e}",
                "local": f"{self.local_residual:.5e}",
                "clique": f"{self.clique_residual:.5e}",
            },
        }


def hc_check(p, g: Graph, tol: float = DEFAULT_TOL) -> HCReport:
    """Evaluate pairwise Markov, local Markov and clique factorisation for one law."""
    t = _table(p)
    pw = markov_test(t, g, "pairwise", tol)
    lo = markov_test(t, g, "local", tol)
    cl = member(t, clique_complex(g).maximal, tol)
    return HCReport(pw.holds, lo.holds, cl.is_member, pw.worst_residual, lo.worst_residual, cl.residual)
