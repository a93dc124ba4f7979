"""Exhaustive property checks over one G_n.

Failures are reported as data: each property carries a pass flag, the number
of items checked and the first counterexample found.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable

from .atlas import (
    HISTOGRAM_INVARIANTS,
    EdgeDatasetRow,
    active_set_table,
    histogram,
    joint_counts,
    rank_table,
    summarize,
)
from .graph import OrientedEdge, PartitionGraph, build_graph
from .invariants import INVARIANT_NAMES, InvariantTable, invariant_table, local_dimension
from .jumps import (
    BASIC,
    crossed_thresholds,
    degree_reorganization,
    jump,
    jump_signature,
    support_jump_local,
)
from .layers import (
    Cone,
    boundary_rows,
    gradient_dag,
    is_corridor,
    longest_strict_path,
    threshold_layer,
)
from .partitions import (
    Partition,
    apply_transfer,
    legal_transfers,
    neighbors,
    parse_partition,
    partition_count,
)


@dataclass
class PropertyResult:
    name: str
    module: str
    passed: bool = True
    checked: int = 0
    counterexample: str | None = None

    def check(self, ok: bool, witness: Callable[[], str] | str = "") -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = witness() if callable(witness) else witness


@dataclass
class VerificationReport:
    n: int
    results: list[PropertyResult] = field(default_factory=list)
    facts: dict[str, Any] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[PropertyResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "all_passed": self.all_passed,
            "facts": self.facts,
            "properties": [
                {"name": r.name, "module": r.module, "passed": r.passed,
                 "checked": r.checked, "counterexample": r.counterexample}
                for r in self.results
            ],
        }

    def format_table(self) -> str:
        width = max((len(r.name) for r in self.results), default=8)
        lines = [f"n={self.n}"]
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            line = f"  {status}  {r.name:<{width}}  [{r.module}] checked={r.checked}"
            if r.counterexample:
                line += f"  counterexample: {r.counterexample}"
            lines.append(line)
        for k, v in self.facts.items():
            lines.append(f"  fact  {k} = {v}")
        return "\n".join(lines)


def _edge_str(g: PartitionGraph, e: OrientedEdge) -> str:
    return f"{g.vertices[e.source]} -> {g.vertices[e.target]}"


def _partition_core(g: PartitionGraph, report: VerificationReport,
                    nbrs: list[set[Partition]]) -> None:
    vs = g.vertices
    sym = PropertyResult("adjacency-symmetric", "partition-core")
    weight = PropertyResult("weight-conservation", "partition-core")
    noself = PropertyResult("no-self-neighbor", "partition-core")
    local = PropertyResult("multiplicity-change-locality", "partition-core")
    for lam, ns in zip(vs, nbrs):
        noself.check(lam not in ns, str(lam))
        for mu in ns:
            sym.check(lam in nbrs[g.index[mu]], lambda: f"{lam} ~ {mu}")
            weight.check(mu.weight == lam.weight, lambda: f"{lam} -> {mu}")
        for t in legal_transfers(lam):
            mu = apply_transfer(lam, t)
            changed = {i for i in set(lam.parts) | set(mu.parts)
                       if lam.multiplicity(i) != mu.multiplicity(i)}
            local.check(changed <= t.affected_sizes(), lambda: f"{lam} via {tuple(t)}")
    count = PropertyResult("vertex-count-oracle", "partition-core")
    count.check(len(vs) == partition_count(g.n),
                lambda: f"|Par({g.n})|={len(vs)} but p({g.n})={partition_count(g.n)}")
    report.results += [sym, weight, noself, local, count]


def _graph_core(g: PartitionGraph, report: VerificationReport,
                nbrs: list[set[Partition]]) -> None:
    adj = PropertyResult("adjacency-equals-neighbors", "graph-core")
    for v, ns in enumerate(nbrs):
        adj.check(list(g.adjacency[v]) == sorted(g.index[mu] for mu in ns), str(g.vertices[v]))
    hand = PropertyResult("handshake", "graph-core")
    oriented = list(g.oriented_edges())
    unoriented = list(g.unoriented_edges())
    hand.check(sum(len(r) for r in g.adjacency) == 2 * g.edge_count
               and len(oriented) == 2 * len(unoriented) == 2 * g.edge_count,
               "degree sum / stream sizes disagree")
    order = PropertyResult("edge-stream-order", "graph-core")
    order.check(oriented == sorted(oriented), "oriented stream not sorted")
    order.check(unoriented == sorted(unoriented), "unoriented stream not sorted")
    induced = PropertyResult("induced-subgraph", "graph-core")
    for keep in (set(range(0, len(g), 2)), set(range(len(g) // 2))):
        expected = [e for e in unoriented if e.lo in keep and e.hi in keep]
        induced.check(g.induced_edges(keep) == expected, "induced edge set differs")
    report.results += [adj, hand, order, induced]


def _all_clique_dimension(g: PartitionGraph, v: int) -> int:
    """Largest clique through ``v`` minus one, by trying every subset of N(v)."""
    nb = g.adjacency[v]
    best = 0
    for k in range(1, len(nb) + 1):
        if k <= best:
            continue
        for sub in combinations(nb, k):
            if all(g.are_adjacent(x, y) for x, y in combinations(sub, 2)):
                best = k
                break
    return best


def _invariants(g: PartitionGraph, t: InvariantTable, report: VerificationReport) -> None:
    vs = g.vertices
    dle = PropertyResult("delta-le-degree", "invariants")
    sig = PropertyResult("support-bounds", "invariants")
    reg = PropertyResult("registry-agreement", "invariants")
    for v, lam in enumerate(vs):
        dle.check(t.delta[v] <= t.d[v], str(lam))
        sig.check(1 <= t.sigma[v] <= min(t.a[v], t.b[v]), str(lam))
        reg.check(t.invariant("degree")(v) == g.degree(v), lambda: f"degree at {lam}")
        reg.check(t.invariant("local-dimension")(v) == local_dimension(g, v),
                  lambda: f"local-dimension at {lam}")
        reg.check(t.invariant("support")(v) == lam.support_size, lambda: f"support at {lam}")
        reg.check(t.invariant("adist")(v) == abs(lam.largest - lam.length),
                  lambda: f"adist at {lam}")
    report.results += [dle, sig, reg]
    if g.n <= 10:
        ex = PropertyResult("delta-exhaustive-oracle", "invariants")
        for v, lam in enumerate(vs):
            ex.check(t.delta[v] == _all_clique_dimension(g, v), str(lam))
        report.results.append(ex)


def _jumps(g: PartitionGraph, t: InvariantTable, report: VerificationReport,
           rows: list[EdgeDatasetRow]) -> None:
    bound = PropertyResult("support-jump-bound", "jumps")
    anti = PropertyResult("signature-antisymmetry", "jumps")
    rank = PropertyResult("rank-equals-crossed-systems", "jumps")
    cross = PropertyResult("crossed-thresholds-count", "jumps")
    reorg = PropertyResult("degree-reorganization", "jumps")
    for e, row in zip(g.oriented_edges(), rows):
        w = lambda e=e: _edge_str(g, e)
        j = jump_signature(t, e)
        jr = jump_signature(t, e.reversed())
        bound.check(abs(j.dsigma) <= 2, w)
        anti.check(jr == -j and jr.absolute() == j.absolute(), w)
        systems = sum(1 for f in BASIC if crossed_thresholds(t, e, f))
        rank.check(j.rank == systems == row.rank, w)
        for f in INVARIANT_NAMES:
            cross.check(len(crossed_thresholds(t, e, f)) == abs(jump(t, e, f)), w)
        dr = degree_reorganization(g, e)
        lam, mu = g.vertices[e.source], g.vertices[e.target]
        reorg.check(dr.dd == j.dd and abs(j.dd) <= dr.rho == row.rho
                    and lam in dr.births and mu in dr.deaths, w)
    local = PropertyResult("support-jump-local", "jumps")
    for lam in g.vertices:
        for tr in legal_transfers(lam):
            mu = apply_transfer(lam, tr)
            local.check(support_jump_local(lam, tr) == mu.support_size - lam.support_size,
                        lambda: f"{lam} via {tuple(tr)}")
    report.results += [bound, local, anti, rank, cross, reorg]


_CORRIDOR_CONES = ("+++", "+++/strict", "++*", "+-*", "---", "!**", "000", "*0*", "-+!")


def _naive_in_cone(spec: str, sig: tuple[int, int, int]) -> bool:
    body, _, flag = spec.partition("/")
    tests = {"+": lambda x: x >= 0, "-": lambda x: x <= 0, "0": lambda x: x == 0,
             "!": lambda x: x != 0, "*": lambda x: True}
    ok = all(tests[c](x) for c, x in zip(body, sig))
    if flag == "strict":
        ok = ok and sig != (0, 0, 0)
    return ok


def _layers(g: PartitionGraph, t: InvariantTable, report: VerificationReport) -> None:
    upward = PropertyResult("upward-threshold-crossing", "layers-gradients")
    balance = PropertyResult("boundary-orientation-balance", "layers-gradients")
    acyc = PropertyResult("gradient-acyclic", "layers-gradients")
    split = PropertyResult("gradient-edge-partition", "layers-gradients")
    length = PropertyResult("longest-path-bound", "layers-gradients")
    oriented = list(g.oriented_edges())
    witnesses = []
    for f in INVARIANT_NAMES:
        values = t.values(f)
        rs = range(min(values), max(values) + 2)
        layers = {r: threshold_layer(t, f, r).members for r in rs}
        for e in oriented:
            exists = any(e.source not in layers[r] and e.target in layers[r] for r in rs)
            upward.check((jump(t, e, f) > 0) == exists, lambda e=e: f"{f}: {_edge_str(g, e)}")
        for _, r, _, plus, minus in boundary_rows(t, f):
            balance.check(plus == minus, f"{f}, r={r}")
        try:
            dag = gradient_dag(t, f)
        except RuntimeError as exc:
            acyc.check(False, f"{f}: {exc}")
            continue
        acyc.check(True)
        split.check(2 * len(dag.up) + 2 * len(dag.plateau) == len(oriented), f)
        L, path = longest_strict_path(dag)
        length.check(L <= len(set(values)) - 1 and len(path) == L + 1,
                     lambda: f"{f}: length {L}, |V_F|={len(set(values))}")
        witnesses.append(path)
    corridor = PropertyResult("corridor-naive-agreement", "layers-gradients")
    paths = witnesses + [[e.source, e.target] for e in oriented]
    for spec in _CORRIDOR_CONES:
        cone = Cone.parse(spec)
        for p in paths:
            naive = all(_naive_in_cone(spec, (t.d[y] - t.d[x], t.delta[y] - t.delta[x],
                                              t.sigma[y] - t.sigma[x]))
                        for x, y in zip(p, p[1:]))
            corridor.check(is_corridor(t, p, cone).ok == naive,
                           lambda p=p: f"{spec}: {' '.join(str(g.vertices[v]) for v in p)}")
    report.results += [upward, balance, acyc, split, length, corridor]


def _atlas(report: VerificationReport, rows: list[EdgeDatasetRow], edge_count: int,
           vertex_count: int) -> None:
    from .exports import dataset_from_csv, dataset_to_csv, report_to_dict

    sym = PropertyResult("histogram-symmetry", "atlas")
    for f in HISTOGRAM_INVARIANTS:
        sym.check(histogram(rows, f).is_symmetric(), f)
    spec = PropertyResult("spectrum-support-range", "atlas")
    for r in rows:
        spec.check(-2 <= r.dsigma <= 2, lambda r=r: f"{r.lam} -> {r.mu}")
    classes = PropertyResult("active-set-partition", "atlas")
    classes.check(sum(active_set_table(rows).values()) == edge_count)
    classes.check(rank_table(rows).total == edge_count)
    joint = PropertyResult("joint-count-symmetry", "atlas")
    jc = joint_counts(rows)
    for (u, v, w), c in jc.items():
        joint.check(jc.get((-u, -v, -w), 0) == c, f"({u},{v},{w})")
    consistent = PropertyResult("dataset-row-consistency", "atlas")
    for r in rows:
        consistent.check(
            r.dd == r.d_m - r.d_l and r.ddelta == r.delta_m - r.delta_l
            and r.dsigma == r.sigma_m - r.sigma_l and r.da == r.a_m - r.a_l
            and r.db == r.b_m - r.b_l and r.dadist == r.adist_m - r.adist_l
            and r.l1 == abs(r.dd) + abs(r.ddelta) + abs(r.dsigma)
            and r.linf == max(abs(r.dd), abs(r.ddelta), abs(r.dsigma)),
            lambda r=r: f"{r.lam} -> {r.mu}")
    roundtrip = PropertyResult("csv-roundtrip", "atlas")
    back = dataset_from_csv(dataset_to_csv(rows))
    roundtrip.check(back == rows, "rows differ after CSV round trip")
    roundtrip.check(
        report_to_dict(summarize(back, report.n, vertex_count))
        == report_to_dict(summarize(rows, report.n, vertex_count)),
        "tables differ after CSV round trip")
    report.results += [sym, spec, classes, joint, consistent, roundtrip]


def _fixtures(g: PartitionGraph, t: InvariantTable, report: VerificationReport,
              rows: list[EdgeDatasetRow]) -> None:
    P = parse_partition
    if g.n == 4:
        fx = PropertyResult("fixture-g4", "fixtures")
        a, b = g.index[P("[3,1]")], g.index[P("[2,1,1]")]
        fx.check(len(g) == 5 and g.edge_count == 5, "vertex/edge counts")
        fx.check(neighbors(P("[3,1]")) == {P("[4]"), P("[2,2]"), P("[2,1,1]")}, "N((3,1))")
        fx.check(neighbors(P("[2,1,1]")) == {P("[3,1]"), P("[2,2]"), P("[1,1,1,1]")},
                 "N((2,1,1))")
        fx.check(t.d[a] == t.d[b] == 3, "degrees")
        fx.check(t.delta[a] == t.delta[b] == 2, "local dimensions")
        fx.check(t.sigma[a] == t.sigma[b] == 2, "support sizes")
        fx.check(tuple(jump_signature(t, OrientedEdge(a, b))) == (0, 0, 0), "J((3,1),(2,1,1))")
        fx.check(rank_table(rows).T == (1, 0, 2, 2), "rank distribution")
        report.results.append(fx)
    if g.n == 8:
        fx = PropertyResult("fixture-g8-support-sharp", "fixtures")
        a, b = g.index[P("[4,4]")], g.index[P("[4,3,1]")]
        fx.check(g.are_adjacent(a, b), "edge (4,4)~(4,3,1) missing")
        fx.check(jump(t, OrientedEdge(a, b), "sigma") == 2, "forward dsigma")
        fx.check(jump(t, OrientedEdge(b, a), "sigma") == -2, "reverse dsigma")
        fx.check(max((abs(r.dsigma) for r in rows), default=0) == 2, "max |dsigma|")
        report.results.append(fx)


def verify_graph(g: PartitionGraph, table: InvariantTable,
                 rows: list[EdgeDatasetRow]) -> VerificationReport:
    report = VerificationReport(g.n)
    nbrs = [neighbors(lam) for lam in g.vertices]
    _partition_core(g, report, nbrs)
    _graph_core(g, report, nbrs)
    _invariants(g, table, report)
    _jumps(g, table, report, rows)
    _layers(g, table, report)
    _atlas(report, rows, g.edge_count, len(g))
    _fixtures(g, table, report, rows)
    max_abs = max((abs(r.dsigma) for r in rows), default=0)
    report.facts["max_abs_dsigma"] = max_abs
    report.facts["dsigma_2_realized"] = max_abs == 2
    return report


def verify(n: int, backend: str | None = None) -> VerificationReport:
    from .atlas import edge_dataset

    g = build_graph(n)
    table = invariant_table(g, backend=backend)
    return verify_graph(g, table, edge_dataset(g, table, backend=backend))
