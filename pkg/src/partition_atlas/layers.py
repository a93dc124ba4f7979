"""Threshold layers, edge boundaries, strict gradient orientations, monotone
paths and path corridors."""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import NamedTuple, Sequence

from .graph import OrientedEdge, UnorientedEdge
from .invariants import InvariantTable, canonical_name
from .jumps import JumpSignature, jump_signature
from .partitions import Partition


class InternalConsistencyError(RuntimeError):
    """A proved structural property failed; signals a computation bug."""


class InvalidPathError(ValueError):
    pass


@dataclass(frozen=True)
class ThresholdLayer:
    name: str
    r: int
    members: frozenset[int]


def threshold_layer(table: InvariantTable, name: str, r: int) -> ThresholdLayer:
    name = canonical_name(name)
    values = table.values(name)
    return ThresholdLayer(name, r, frozenset(v for v, x in enumerate(values) if x >= r))


class Boundary(NamedTuple):
    edges: list[UnorientedEdge]
    B_r: int
    B_r_plus: int
    B_r_minus: int


def edge_boundary(table: InvariantTable, name: str, r: int) -> Boundary:
    """Edges with exactly one endpoint in ``{F >= r}``.

    ``B_r_plus`` counts oriented edges entering the layer, ``B_r_minus`` those
    leaving it.
    """
    values = table.values(canonical_name(name))
    edges = []
    plus = minus = 0
    for e in table.graph.oriented_edges():
        fs, ft = values[e.source], values[e.target]
        if fs < r <= ft:
            plus += 1
        elif ft < r <= fs:
            minus += 1
        else:
            continue
        if e.source < e.target:
            edges.append(UnorientedEdge(e.source, e.target))
    return Boundary(edges, len(edges), plus, minus)


BOUNDARY_CSV_HEADER = ("F", "r", "B_r", "B_r_plus", "B_r_minus")


def boundary_rows(table: InvariantTable, name: str) -> list[tuple[str, int, int, int, int]]:
    """Boundary counts for every threshold strictly inside the value range."""
    name = canonical_name(name)
    values = table.values(name)
    rows = []
    for r in range(min(values) + 1, max(values) + 1):
        b = edge_boundary(table, name, r)
        rows.append((name, r, b.B_r, b.B_r_plus, b.B_r_minus))
    return rows


_SYMBOLS = {
    "+": lambda x: x >= 0,
    "-": lambda x: x <= 0,
    "0": lambda x: x == 0,
    "!": lambda x: x != 0,
    "*": lambda x: True,
}


@dataclass(frozen=True)
class Cone:
    """Per-component sign box on (dd, ddelta, dsigma), optionally excluding zero.

    Symbols: ``+`` (>= 0), ``-`` (<= 0), ``0`` (= 0), ``!`` (!= 0), ``*`` (free).
    """

    constraints: tuple[str, str, str]
    strict_somewhere: bool = False

    def __post_init__(self) -> None:
        if len(self.constraints) != 3 or any(c not in _SYMBOLS for c in self.constraints):
            raise ValueError(f"bad cone constraints {self.constraints!r}")

    @classmethod
    def parse(cls, spec: str) -> "Cone":
        body, sep, flag = spec.partition("/")
        if sep and flag != "strict":
            raise ValueError(f"bad cone spec {spec!r}")
        if len(body) != 3 or any(c not in _SYMBOLS for c in body):
            raise ValueError(f"bad cone spec {spec!r}")
        return cls(tuple(body), bool(sep))

    def __str__(self) -> str:
        return "".join(self.constraints) + ("/strict" if self.strict_somewhere else "")

    def contains(self, sig: Sequence[int]) -> bool:
        if not all(_SYMBOLS[c](x) for c, x in zip(self.constraints, sig)):
            return False
        return not self.strict_somewhere or any(sig)


@dataclass(frozen=True)
class GradientDag:
    name: str
    vertex_count: int
    up: tuple[OrientedEdge, ...]
    plateau: tuple[UnorientedEdge, ...]

    def successors(self) -> list[list[int]]:
        succ: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for s, t in self.up:
            succ[s].append(t)
        for row in succ:
            row.sort()
        return succ


def check_acyclic(dag: GradientDag) -> tuple[bool, list[int] | None]:
    """Topological order as a certificate, or ``(False, None)`` on a cycle."""
    ts: TopologicalSorter = TopologicalSorter()
    for v in range(dag.vertex_count):
        ts.add(v)
    for s, t in dag.up:
        ts.add(t, s)
    try:
        return True, list(ts.static_order())
    except CycleError:
        return False, None


def gradient_dag(table: InvariantTable, name: str) -> GradientDag:
    name = canonical_name(name)
    values = table.values(name)
    up = []
    plateau = []
    for e in table.graph.oriented_edges():
        fs, ft = values[e.source], values[e.target]
        if ft > fs:
            up.append(e)
        elif ft == fs and e.source < e.target:
            plateau.append(UnorientedEdge(e.source, e.target))
    dag = GradientDag(name, len(values), tuple(up), tuple(plateau))
    ok, _ = check_acyclic(dag)
    if not ok:
        raise InternalConsistencyError(f"strict {name}-gradient orientation has a cycle")
    return dag


def longest_strict_path(dag: GradientDag) -> tuple[int, list[int]]:
    """Longest directed path; ties go to the lexicographically smallest index sequence."""
    ok, order = check_acyclic(dag)
    if not ok:
        raise InternalConsistencyError(f"strict {dag.name}-gradient orientation has a cycle")
    if dag.vertex_count == 0:
        return 0, []
    succ = dag.successors()
    reach = [0] * dag.vertex_count
    for v in reversed(order):
        if succ[v]:
            reach[v] = 1 + max(reach[u] for u in succ[v])
    length = max(reach)
    v = reach.index(length)
    path = [v]
    while reach[v]:
        v = next(u for u in succ[v] if reach[u] == reach[v] - 1)
        path.append(v)
    return length, path


class CorridorCheck(NamedTuple):
    ok: bool
    failed_step: int | None
    signature: JumpSignature | None


def _as_indices(table: InvariantTable, path: Sequence[int | Partition]) -> list[int]:
    g = table.graph
    return [g.vertex_of(x) if isinstance(x, Partition) else int(x) for x in path]


def is_corridor(table: InvariantTable, path: Sequence[int | Partition], cone: Cone) -> CorridorCheck:
    """Whether every step of ``path`` has its jump signature inside ``cone``.

    On failure, reports the first violating step and its signature.
    """
    idx = _as_indices(table, path)
    g = table.graph
    for i, (s, t) in enumerate(zip(idx, idx[1:])):
        if not g.are_adjacent(s, t):
            raise InvalidPathError(
                f"step {i}: {g.vertices[s]} and {g.vertices[t]} are not adjacent")
    for i, (s, t) in enumerate(zip(idx, idx[1:])):
        sig = jump_signature(table, OrientedEdge(s, t))
        if not cone.contains(sig):
            return CorridorCheck(False, i, sig)
    return CorridorCheck(True, None, None)


def classify_axial(table: InvariantTable, e: OrientedEdge) -> str:
    change = table.adist[e.target] - table.adist[e.source]
    if change < 0:
        return "inward"
    if change > 0:
        return "outward"
    return "neutral"
