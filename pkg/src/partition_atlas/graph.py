"""The partition graph G_n with dense vertex indices and edge streams."""

from __future__ import annotations

from array import array
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .partitions import Partition, enumerate_partitions, neighbors


class OrientedEdge(NamedTuple):
    source: int
    target: int

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.target, self.source)


class UnorientedEdge(NamedTuple):
    lo: int
    hi: int

    def orientations(self) -> tuple[OrientedEdge, OrientedEdge]:
        return OrientedEdge(self.lo, self.hi), OrientedEdge(self.hi, self.lo)


class PartitionGraph:
    """Immutable partition graph on Par(n).

    Vertices are indexed by their position in the canonical order; each
    adjacency row is a sorted tuple of vertex indices.
    """

    def __init__(self, n: int, vertices: tuple[Partition, ...],
                 adjacency: tuple[tuple[int, ...], ...]):
        self.n = n
        self.vertices = vertices
        self.adjacency = adjacency
        self.index = {lam: i for i, lam in enumerate(vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"PartitionGraph(n={self.n}, vertices={len(self)}, edges={self.edge_count})"

    @cached_property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    def degree(self, v: int) -> int:
        if not 0 <= v < len(self.vertices):
            raise IndexError(f"vertex index {v} out of range for G_{self.n}")
        return len(self.adjacency[v])

    def neighbor_set(self, v: int) -> frozenset[int]:
        return frozenset(self.adjacency[v])

    def vertex_of(self, lam: Partition) -> int:
        try:
            return self.index[lam]
        except KeyError:
            raise KeyError(f"{lam} is not a vertex of G_{self.n}") from None

    def are_adjacent(self, u: int, v: int) -> bool:
        return v in self._adjacency_sets[u]

    @cached_property
    def _adjacency_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(row) for row in self.adjacency)

    def oriented_edges(self) -> Iterator[OrientedEdge]:
        """Every oriented edge, ordered by source then target index."""
        for s, row in enumerate(self.adjacency):
            for t in row:
                yield OrientedEdge(s, t)

    def unoriented_edges(self) -> Iterator[UnorientedEdge]:
        for s, row in enumerate(self.adjacency):
            for t in row:
                if t > s:
                    yield UnorientedEdge(s, t)

    def induced_edges(self, subset: Iterable[int]) -> list[UnorientedEdge]:
        """Edges with both endpoints inside ``subset``."""
        keep = set(subset)
        return [e for e in self.unoriented_edges() if e.lo in keep and e.hi in keep]

    @cached_property
    def csr(self) -> tuple[array, array]:
        """Compressed adjacency ``(indptr, indices)`` as int64 arrays."""
        indptr = array("q", [0])
        indices = array("q")
        for row in self.adjacency:
            indices.extend(row)
            indptr.append(len(indices))
        return indptr, indices

    def edge_list_text(self) -> str:
        """One ``[lambda] [mu]`` line per unoriented edge in stream order."""
        vs = self.vertices
        return "".join(f"{vs[e.lo]} {vs[e.hi]}\n" for e in self.unoriented_edges())


def build_graph(n: int) -> PartitionGraph:
    vertices = tuple(enumerate_partitions(n))
    index = {lam: i for i, lam in enumerate(vertices)}
    rows = [set() for _ in vertices]
    for i, lam in enumerate(vertices):
        for mu in neighbors(lam):
            j = index[mu]
            rows[i].add(j)
            rows[j].add(i)
    adjacency = tuple(tuple(sorted(r)) for r in rows)
    return PartitionGraph(n, vertices, adjacency)
