import numpy as np
import pytest

from permwrithe.graphs import (
    DirectedGraph,
    clockwise_tournament,
    complete_bipartite,
    graphical_inversions,
    oriented_cycle,
    oriented_path,
    standard_graphs,
    transitive_tournament,
)
from permwrithe.permutation import Permutation, identity, writhe_rows


def test_clockwise_tournament_shape():
    g = clockwise_tournament(1)
    assert g.num_vertices == 3
    assert set(g.edges) == {(1, 2), (2, 3), (3, 1)}
    g2 = clockwise_tournament(2)
    assert g2.num_vertices == 5
    assert g2.num_edges == 10
    outdeg = np.zeros(6, int)
    indeg = np.zeros(6, int)
    for u, w in g2.edges:
        outdeg[u] += 1
        indeg[w] += 1
    assert all(outdeg[1:6] == 2) and all(indeg[1:6] == 2)


def test_standard_graphs():
    path = standard_graphs("path", 3)
    assert path.edges == ((1, 2), (2, 3), (3, 4))
    cyc = standard_graphs("cycle", 3)
    assert cyc.num_edges == 3 and cyc.num_vertices == 3
    bip = standard_graphs("complete_bipartite", 2, 2)
    assert bip.num_edges == 4
    four = standard_graphs("four_block_cycle", 1, 1, 1, 1)
    assert four.num_vertices == 4 and four.num_edges == 4
    assert transitive_tournament(4).num_edges == 6
    with pytest.raises(ValueError):
        standard_graphs("mystery", 3)
    with pytest.raises(ValueError):
        oriented_cycle(1)
    with pytest.raises(ValueError):
        complete_bipartite(0, 2)


def test_graph_validation():
    with pytest.raises(ValueError):
        DirectedGraph(2, ((1, 3),))
    with pytest.raises(ValueError):
        DirectedGraph(2, ((1, 1),))  # self-loop
    g = DirectedGraph(3, ((1, 2), (1, 2)))  # parallel edges allowed
    assert g.num_edges == 2


def test_graphical_inversions_examples():
    ident = identity(3)
    assert graphical_inversions(ident, clockwise_tournament(1)) == 1
    rev = Permutation([3, 2, 1, 0])
    assert graphical_inversions(rev, transitive_tournament(4)) == 6
    assert graphical_inversions(identity(4), transitive_tournament(4)) == 0
    with pytest.raises(ValueError):
        graphical_inversions(identity(4), clockwise_tournament(1))


def test_flip_and_union_helpers():
    g = oriented_path(2)
    flipped = g.flip_edge(0)
    assert flipped.edges[0] == (2, 1)
    u = g.disjoint_union(oriented_cycle(3))
    assert u.num_vertices == 6 and u.num_edges == 5


def test_tournament_writhe_identity_exhaustive_s5(all_perms):
    g = clockwise_tournament(2)
    w = writhe_rows(all_perms(5))
    invs = np.array(
        [graphical_inversions(Permutation(row), g) for row in all_perms(5)]
    )
    assert np.array_equal(w, 5 * 2 - 2 * invs)
