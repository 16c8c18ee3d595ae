"""Small labeled directed multigraphs and graphical inversion numbers.

A directed graph G on vertices {1, ..., v} turns every permutation p
into a count: the number of edges u -> w with p(u) > p(w), written
here as :func:`graphical_inversions`.  Choosing G recovers the familiar
permutation statistics: the complete transitive tournament gives the
inversion number, an oriented path gives the descent number, a complete
bipartite graph gives the Mann-Whitney statistic, and the *clockwise
tournament* on Z_{2n+1} encodes the writhe via

    writhe(p) = (2n+1) * n - 2 * graphical_inversions(p, G).

Vertices are 1-based, matching the usual combinatorial convention;
permutation positions are 0-based.  The conversion happens only inside
:func:`graphical_inversions`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .permutation import Permutation

__all__ = [
    "DirectedGraph",
    "clockwise_tournament",
    "transitive_tournament",
    "oriented_path",
    "oriented_cycle",
    "complete_bipartite",
    "four_block_cycle",
    "standard_graphs",
    "graphical_inversions",
]


@dataclass(frozen=True)
class DirectedGraph:
    """Directed multigraph on vertices {1, ..., num_vertices}.

    Parallel edges are allowed; self-loops are not (they would compare
    a value with itself, which every statistic here leaves undefined).
    """

    num_vertices: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        for u, w in self.edges:
            if not (1 <= u <= self.num_vertices and 1 <= w <= self.num_vertices):
                raise ValueError(f"edge ({u}, {w}) out of range 1..{self.num_vertices}")
            if u == w:
                raise ValueError(f"self-loop at vertex {u} is not allowed")
        object.__setattr__(self, "edges", tuple((int(u), int(w)) for u, w in self.edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def flip_edge(self, index: int) -> "DirectedGraph":
        """Reverse the direction of one edge (negates the average sign)."""
        u, w = self.edges[index]
        edges = list(self.edges)
        edges[index] = (w, u)
        return DirectedGraph(self.num_vertices, tuple(edges))

    def disjoint_union(self, other: "DirectedGraph") -> "DirectedGraph":
        shift = self.num_vertices
        edges = self.edges + tuple((u + shift, w + shift) for u, w in other.edges)
        return DirectedGraph(self.num_vertices + other.num_vertices, edges)


def clockwise_tournament(n: int) -> DirectedGraph:
    """Tournament on Z_{2n+1} with edges i -> i+j for j = 1..n.

    Every vertex has out-degree and in-degree n; the total edge count is
    (2n+1)*n.  Vertex i+1 stands for the residue i.
    """
    if n < 1:
        raise ValueError("n must be positive")
    size = 2 * n + 1
    edges = tuple(
        (i + 1, ((i + j) % size) + 1) for i in range(size) for j in range(1, n + 1)
    )
    return DirectedGraph(size, edges)


def transitive_tournament(num_vertices: int) -> DirectedGraph:
    """Complete transitive graph: u -> w for every u < w."""
    if num_vertices < 1:
        raise ValueError("need at least one vertex")
    edges = tuple(
        (u, w) for u in range(1, num_vertices + 1) for w in range(u + 1, num_vertices + 1)
    )
    return DirectedGraph(num_vertices, edges)


def oriented_path(num_edges: int) -> DirectedGraph:
    """Path 1 -> 2 -> ... -> num_edges+1."""
    if num_edges < 0:
        raise ValueError("edge count must be nonnegative")
    edges = tuple((i, i + 1) for i in range(1, num_edges + 1))
    return DirectedGraph(num_edges + 1, edges)


def oriented_cycle(num_edges: int) -> DirectedGraph:
    """Cycle 1 -> 2 -> ... -> num_edges -> 1."""
    if num_edges < 2:
        raise ValueError("a cycle needs at least 2 edges")
    edges = tuple((i, i % num_edges + 1) for i in range(1, num_edges + 1))
    return DirectedGraph(num_edges, edges)


def complete_bipartite(left: int, right: int) -> DirectedGraph:
    """All edges u -> w with u in the left block, w in the right block."""
    if left < 1 or right < 1:
        raise ValueError("both blocks must be nonempty")
    edges = tuple(
        (u, w) for u in range(1, left + 1) for w in range(left + 1, left + right + 1)
    )
    return DirectedGraph(left + right, edges)


def four_block_cycle(u1: int, v1: int, u2: int, v2: int) -> DirectedGraph:
    """Blocks U1 => V1 => U2 => V2 => U1, complete between adjacent blocks."""
    sizes = (u1, v1, u2, v2)
    if min(sizes) < 1:
        raise ValueError("all four blocks must be nonempty")
    starts = np.cumsum((1,) + sizes)
    blocks = [list(range(starts[i], starts[i + 1])) for i in range(4)]
    edges = []
    for b in range(4):
        for u in blocks[b]:
            for w in blocks[(b + 1) % 4]:
                edges.append((u, w))
    return DirectedGraph(sum(sizes), tuple(edges))


_STANDARD = {
    "transitive": transitive_tournament,
    "path": oriented_path,
    "cycle": oriented_cycle,
    "complete_bipartite": complete_bipartite,
    "four_block_cycle": four_block_cycle,
}


def standard_graphs(kind: str, *params: int) -> DirectedGraph:
    """Construct a named graph family member.

    Kinds and parameters:

    - ``"transitive"``: number of vertices
    - ``"path"`` / ``"cycle"``: number of edges
    - ``"complete_bipartite"``: left size, right size
    - ``"four_block_cycle"``: the four block sizes
    """
    try:
        builder = _STANDARD[kind]
    except KeyError:
        raise ValueError(f"unknown graph kind {kind!r}; choose from {sorted(_STANDARD)}")
    return builder(*params)


def graphical_inversions(p: Permutation, graph: DirectedGraph) -> int:
    """Number of edges u -> w of the graph with p(u) > p(w).

    Vertices 1..N are identified with positions 0..N-1.  The count is
    exact over the edge multiset; parallel edges count twice.
    """
    if graph.num_vertices != p.size:
        raise ValueError(
            f"graph has {graph.num_vertices} vertices but permutation has size {p.size}"
        )
    if not graph.edges:
        return 0
    e = np.asarray(graph.edges, dtype=np.int64) - 1
    return int(np.count_nonzero(p.map[e[:, 0]] > p.map[e[:, 1]]))
