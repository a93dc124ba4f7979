"""Vertex invariants of G_n and a registry of named integer invariants."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable

from . import kernels
from ._kernels_py import max_clique_size
from .graph import PartitionGraph

INVARIANT_NAMES = ("d", "delta", "sigma", "a", "b", "alpha", "adist")

ALIASES = {
    "degree": "d",
    "local-dimension": "delta",
    "support": "sigma",
    "largest": "a",
    "length": "b",
}

VERTEX_CSV_HEADER = ("partition", "d", "delta", "sigma", "a", "b", "alpha", "adist")


def canonical_name(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in INVARIANT_NAMES:
        raise KeyError(f"unknown invariant {name!r}")
    return name


def local_dimension(g: PartitionGraph, v: int) -> int:
    """Largest clique through ``v`` minus one, searched inside N(v) only."""
    nbrs = g.adjacency[v]
    local = {u: i for i, u in enumerate(nbrs)}
    adj = []
    for u in nbrs:
        mask = 0
        for w in g.adjacency[u]:
            j = local.get(w)
            if j is not None:
                mask |= 1 << j
        adj.append(mask)
    return max_clique_size(adj)


@dataclass(frozen=True)
class VertexInvariant:
    """A named integer invariant evaluated on the vertices of one graph."""

    name: str
    values: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.values[v]

    @property
    def evaluate(self) -> Callable[[int], int]:
        return self.__call__

    def realized_values(self) -> frozenset[int]:
        return frozenset(self.values)


@dataclass(frozen=True)
class InvariantTable:
    """Per-vertex values of every registered invariant, in vertex order."""

    graph: PartitionGraph
    d: tuple[int, ...]
    delta: tuple[int, ...]
    sigma: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]
    alpha: tuple[int, ...]
    adist: tuple[int, ...]

    def invariant(self, name: str) -> VertexInvariant:
        name = canonical_name(name)
        return VertexInvariant(name, getattr(self, name))

    def values(self, name: str) -> tuple[int, ...]:
        return getattr(self, canonical_name(name))

    def row(self, v: int) -> dict[str, int]:
        return {name: getattr(self, name)[v] for name in INVARIANT_NAMES}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(VERTEX_CSV_HEADER)
        for v, lam in enumerate(self.graph.vertices):
            w.writerow([str(lam)] + [getattr(self, name)[v] for name in INVARIANT_NAMES])
        return buf.getvalue()


def invariant_table(g: PartitionGraph, backend: str | None = None) -> InvariantTable:
    indptr, indices = g.csr
    delta = tuple(kernels.local_clique_sizes(indptr, indices, backend=backend))
    vs = g.vertices
    a = tuple(lam.largest for lam in vs)
    b = tuple(lam.length for lam in vs)
    alpha = tuple(x - y for x, y in zip(a, b))
    return InvariantTable(
        graph=g,
        d=tuple(len(row) for row in g.adjacency),
        delta=delta,
        sigma=tuple(lam.support_size for lam in vs),
        a=a,
        b=b,
        alpha=alpha,
        adist=tuple(abs(x) for x in alpha),
    )
