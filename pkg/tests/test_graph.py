from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from partition_atlas.graph import OrientedEdge, UnorientedEdge, build_graph
from partition_atlas.partitions import enumerate_partitions, neighbors

from conftest import P, graph, vid


def _oracle_adjacent(lam, mu, n):
    """Pairwise test: the multisets differ by {p, q} -> {p-1, q+1}, zeros padded."""
    L = Counter(lam.parts + (0,) * (n - len(lam)))
    M = Counter(mu.parts + (0,) * (n - len(mu)))
    lost, gained = L - M, M - L
    if sum(lost.values()) != 2 or sum(gained.values()) != 2:
        return False
    a, b = sorted(lost.elements())
    g = sorted(gained.elements())
    return any(p >= 1 and sorted((p - 1, q + 1)) == g for p, q in ((a, b), (b, a)))


@pytest.mark.parametrize("n", range(1, 11))
def test_adjacency_matches_pairwise_oracle(n):
    g = graph(n)
    expected = {(i, j) for i, j in combinations(range(len(g)), 2)
                if _oracle_adjacent(g.vertices[i], g.vertices[j], n)}
    assert set(g.unoriented_edges()) == expected


# frozen from the pairwise oracle above
@pytest.mark.parametrize("n,nv,ne", [(1, 1, 0), (4, 5, 5), (5, 7, 9), (6, 11, 17), (10, 42, 114)])
def test_sizes(n, nv, ne):
    g = graph(n)
    assert (len(g), g.edge_count) == (nv, ne)


def test_vertex_order_is_canonical():
    for n in range(1, 12):
        assert list(graph(n).vertices) == enumerate_partitions(n)


@pytest.mark.parametrize("n", range(1, 19))
def test_adjacency_is_closure_of_neighbors(n):
    g = graph(n)
    for v, lam in enumerate(g.vertices):
        assert g.adjacency[v] == tuple(sorted(g.index[mu] for mu in neighbors(lam)))
        assert v not in g.adjacency[v]


def test_edge_streams_g4():
    g = graph(4)
    assert len(list(g.oriented_edges())) == 10
    assert list(graph(1).oriented_edges()) == []
    assert list(graph(1).unoriented_edges()) == []


@pytest.mark.parametrize("n", [6, 9, 14])
def test_streams_and_handshake(n):
    g = graph(n)
    oriented = list(g.oriented_edges())
    unoriented = list(g.unoriented_edges())
    assert sum(g.degree(v) for v in range(len(g))) == 2 * len(unoriented) == len(oriented)
    assert oriented == sorted(oriented)
    assert all(e.lo < e.hi for e in unoriented)
    assert set(oriented) == {o for e in unoriented for o in e.orientations()}
    assert all(e.reversed() in set(oriented) for e in oriented)


def test_degrees():
    assert graph(4).degree(vid(4, "[3,1]")) == 3
    assert graph(4).degree(vid(4, "[4]")) == 1
    assert graph(1).degree(0) == 0
    with pytest.raises(IndexError):
        graph(4).degree(5)


def test_build_is_deterministic():
    assert build_graph(12).adjacency == build_graph(12).adjacency
    assert build_graph(12).edge_list_text() == graph(12).edge_list_text()


def test_edge_list_text():
    assert graph(4).edge_list_text().splitlines() == [
        "[4] [3,1]", "[3,1] [2,2]", "[3,1] [2,1,1]", "[2,2] [2,1,1]", "[2,1,1] [1,1,1,1]"]


def test_build_rejects_bad_n():
    with pytest.raises(ValueError):
        build_graph(0)


def test_unknown_vertex():
    with pytest.raises(KeyError):
        graph(4).vertex_of(P("[3,2]"))


@given(st.integers(1, 12), st.data())
def test_induced_subgraph(n, data):
    g = graph(n)
    keep = data.draw(st.sets(st.integers(0, len(g) - 1)))
    got = g.induced_edges(keep)
    assert got == [e for e in g.unoriented_edges() if e.lo in keep and e.hi in keep]
    for e in got:
        assert g.are_adjacent(e.lo, e.hi)
    n_inside = sum(1 for i in keep for j in keep if i < j and g.are_adjacent(i, j))
    assert len(got) == n_inside


def test_edge_types():
    assert OrientedEdge(1, 2).reversed() == OrientedEdge(2, 1)
    assert UnorientedEdge(1, 2).orientations() == (OrientedEdge(1, 2), OrientedEdge(2, 1))
