"""Oriented edge dataset for G_n and the tables aggregated from it.

Every table in an :class:`AtlasReport` is computed from the dataset rows
alone, so a report can be rebuilt from an exported CSV.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .graph import PartitionGraph, build_graph
from .invariants import InvariantTable, invariant_table
from .jumps import (
    TAXONOMY_LABELS,
    classify,
    encode_active_set,
    encode_sign_pattern,
    jump_signature,
)
from .layers import classify_axial
from .partitions import Partition

SCHEMA_VERSION = "atlas-schema 1"

# (csv column, row attribute)
COLUMNS = (
    ("n", "n"), ("lambda", "lam"), ("mu", "mu"),
    ("d_l", "d_l"), ("d_m", "d_m"), ("delta_l", "delta_l"), ("delta_m", "delta_m"),
    ("sigma_l", "sigma_l"), ("sigma_m", "sigma_m"),
    ("a_l", "a_l"), ("b_l", "b_l"), ("a_m", "a_m"), ("b_m", "b_m"),
    ("adist_l", "adist_l"), ("adist_m", "adist_m"),
    ("dd", "dd"), ("ddelta", "ddelta"), ("dsigma", "dsigma"),
    ("da", "da"), ("db", "db"), ("dadist", "dadist"),
    ("rank", "rank"), ("active_set", "active_set"), ("sign_pattern", "sign_pattern"),
    ("taxonomy", "taxonomy"), ("axial", "axial"), ("rho", "rho"),
    ("l1", "l1"), ("linf", "linf"),
)
CSV_HEADER = ",".join(c for c, _ in COLUMNS)

# invariant name -> (jump column, source column, target column)
JUMP_COLUMNS = {
    "d": ("dd", "d_l", "d_m"),
    "delta": ("ddelta", "delta_l", "delta_m"),
    "sigma": ("dsigma", "sigma_l", "sigma_m"),
    "a": ("da", "a_l", "a_m"),
    "b": ("db", "b_l", "b_m"),
    "adist": ("dadist", "adist_l", "adist_m"),
}
HISTOGRAM_INVARIANTS = ("d", "delta", "sigma", "a", "b", "adist")
HEATMAP_METRICS = ("abs-dd", "abs-ddelta", "abs-dsigma", "total-activity")
POSITIONINGS = ("midpoint", "min-adist", "min-d", "max-d", "min-delta", "max-delta",
                "min-sigma", "max-sigma")
NORMS = ("l1", "linf", "d", "delta", "sigma")


@dataclass(frozen=True)
class EdgeDatasetRow:
    n: int
    lam: Partition
    mu: Partition
    d_l: int
    d_m: int
    delta_l: int
    delta_m: int
    sigma_l: int
    sigma_m: int
    a_l: int
    b_l: int
    a_m: int
    b_m: int
    adist_l: int
    adist_m: int
    dd: int
    ddelta: int
    dsigma: int
    da: int
    db: int
    dadist: int
    rank: int
    active_set: str
    sign_pattern: str
    taxonomy: str
    axial: str
    rho: int
    l1: int
    linf: int

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.dd, self.ddelta, self.dsigma)

    @property
    def canonical(self) -> bool:
        """True for the orientation that represents the unoriented edge."""
        return self.lam < self.mu


def edge_dataset(g: PartitionGraph, table: InvariantTable,
                 backend: str | None = None) -> list[EdgeDatasetRow]:
    edges = list(g.oriented_edges())
    indptr, indices = g.csr
    rho = kernels.edge_symmetric_differences(
        indptr, indices, [e.source for e in edges], [e.target for e in edges],
        backend=backend)
    vs = g.vertices
    t = table
    rows = []
    for e, r in zip(edges, rho):
        s, m = e
        sig = jump_signature(t, e)
        cls = classify(sig)
        rows.append(EdgeDatasetRow(
            n=g.n, lam=vs[s], mu=vs[m],
            d_l=t.d[s], d_m=t.d[m], delta_l=t.delta[s], delta_m=t.delta[m],
            sigma_l=t.sigma[s], sigma_m=t.sigma[m],
            a_l=t.a[s], b_l=t.b[s], a_m=t.a[m], b_m=t.b[m],
            adist_l=t.adist[s], adist_m=t.adist[m],
            dd=sig.dd, ddelta=sig.ddelta, dsigma=sig.dsigma,
            da=t.a[m] - t.a[s], db=t.b[m] - t.b[s], dadist=t.adist[m] - t.adist[s],
            rank=cls.rank,
            active_set=encode_active_set(cls.active_set),
            sign_pattern=encode_sign_pattern(cls.sign_pattern),
            taxonomy=cls.taxonomy_label,
            axial=classify_axial(t, e),
            rho=r, l1=sig.l1, linf=sig.linf,
        ))
    return rows


def build_edge_dataset(n: int, backend: str | None = None) -> list[EdgeDatasetRow]:
    g = build_graph(n)
    return edge_dataset(g, invariant_table(g, backend=backend), backend=backend)


def unoriented_rows(rows: Iterable[EdgeDatasetRow]) -> list[EdgeDatasetRow]:
    return [r for r in rows if r.canonical]


# ---------------------------------------------------------------- aggregation

def jump_ranges(rows: Sequence[EdgeDatasetRow]) -> dict[str, dict[str, int | None]]:
    out = {}
    for col in ("dd", "ddelta", "dsigma", "da", "db", "dadist"):
        vals = [getattr(r, col) for r in rows]
        out[col] = {
            "min": min(vals) if vals else None,
            "max": max(vals) if vals else None,
            "max_abs": max(map(abs, vals)) if vals else None,
        }
    return out


def signed_spectrum(rows: Iterable[EdgeDatasetRow]) -> list[tuple[int, int, int]]:
    return sorted({r.signature for r in rows})


def absolute_spectrum(rows: Iterable[EdgeDatasetRow]) -> list[tuple[int, int, int]]:
    return sorted({(abs(r.dd), abs(r.ddelta), abs(r.dsigma)) for r in rows})


def component_spectra(rows: Sequence[EdgeDatasetRow]) -> dict[str, list[int]]:
    return {col: sorted({getattr(r, col) for r in rows}) for col in ("dd", "ddelta", "dsigma")}


@dataclass(frozen=True)
class Histogram:
    name: str
    oriented: bool
    counts: dict[int, int]

    def is_symmetric(self) -> bool:
        return all(self.counts.get(-k, 0) == c for k, c in self.counts.items())


def histogram(rows: Iterable[EdgeDatasetRow], name: str, oriented: bool = True) -> Histogram:
    """Signed histogram over oriented rows, or absolute over unoriented edges."""
    col = JUMP_COLUMNS[name][0]
    if oriented:
        c = Counter(getattr(r, col) for r in rows)
    else:
        c = Counter(abs(getattr(r, col)) for r in rows if r.canonical)
    return Histogram(name, oriented, dict(sorted(c.items())))


@dataclass(frozen=True)
class RankTable:
    T: tuple[int, int, int, int]

    @property
    def total(self) -> int:
        return sum(self.T)

    @property
    def tau(self) -> tuple[Fraction, ...] | None:
        if not self.total:
            return None
        return tuple(Fraction(t, self.total) for t in self.T)

    @property
    def dominant_rank(self) -> int | None:
        if not self.total:
            return None
        return self.T.index(max(self.T))

    @property
    def dominant_tie(self) -> bool:
        return self.total > 0 and self.T.count(max(self.T)) > 1


def rank_table(rows: Iterable[EdgeDatasetRow]) -> RankTable:
    c = Counter(r.rank for r in rows if r.canonical)
    return RankTable(tuple(c.get(k, 0) for k in range(4)))


def active_set_table(rows: Iterable[EdgeDatasetRow]) -> dict[str, int]:
    c = Counter(r.taxonomy for r in rows if r.canonical)
    return {label: c.get(label, 0) for label in TAXONOMY_LABELS}


def joint_counts(rows: Iterable[EdgeDatasetRow], oriented: bool = True) -> dict[tuple[int, int, int], int]:
    if oriented:
        c = Counter(r.signature for r in rows)
    else:
        c = Counter((abs(r.dd), abs(r.ddelta), abs(r.dsigma)) for r in rows if r.canonical)
    return dict(sorted(c.items()))


def boundary_counts(rows: Sequence[EdgeDatasetRow], name: str) -> list[tuple[str, int, int, int, int]]:
    """``(F, r, B_r, B_r_plus, B_r_minus)`` for each threshold inside the realized range."""
    _, lcol, mcol = JUMP_COLUMNS[name]
    pairs = [(getattr(r, lcol), getattr(r, mcol)) for r in rows]
    if not pairs:
        return []
    lo = min(min(p) for p in pairs)
    hi = max(max(p) for p in pairs)
    out = []
    for thr in range(lo + 1, hi + 1):
        plus = sum(1 for x, y in pairs if x < thr <= y)
        minus = sum(1 for x, y in pairs if y < thr <= x)
        unoriented = sum(1 for r, (x, y) in zip(rows, pairs)
                         if r.canonical and min(x, y) < thr <= max(x, y))
        out.append((name, thr, unoriented, plus, minus))
    return out


@dataclass(frozen=True)
class LargeJumpSet:
    norm: str
    threshold: int
    edges: tuple[tuple[Partition, Partition], ...]


def _activity(r: EdgeDatasetRow, norm: str) -> int:
    if norm == "l1":
        return r.l1
    if norm == "linf":
        return r.linf
    return abs(getattr(r, JUMP_COLUMNS[norm][0]))


def large_jump_edges(rows: Iterable[EdgeDatasetRow], norm: str, r: int) -> LargeJumpSet:
    """Unoriented edges whose activity under ``norm`` is at least ``r``."""
    if norm not in NORMS:
        raise ValueError(f"unknown norm {norm!r}; expected one of {NORMS}")
    if r < 0:
        raise ValueError("threshold must be non-negative")
    edges = tuple((row.lam, row.mu) for row in rows
                  if row.canonical and _activity(row, norm) >= r)
    return LargeJumpSet(norm, r, edges)


@dataclass
class HeatmapGrid:
    """Cells keyed by doubled (a, b) coordinates, holding (count, metric total)."""

    metric: str
    positioning: str
    cells: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def mean(self, cell: tuple[int, int]) -> Fraction:
        count, total = self.cells[cell]
        return Fraction(total, count)

    @property
    def edge_count(self) -> int:
        return sum(c for c, _ in self.cells.values())


def _metric(r: EdgeDatasetRow, metric: str) -> int:
    if metric == "total-activity":
        return r.l1
    return abs(getattr(r, metric[len("abs-"):]))


def _position(r: EdgeDatasetRow, positioning: str) -> tuple[int, int]:
    if positioning == "midpoint":
        return (r.a_l + r.a_m, r.b_l + r.b_m)
    which, name = positioning.split("-", 1)
    _, lcol, mcol = JUMP_COLUMNS[name]
    fl, fm = getattr(r, lcol), getattr(r, mcol)
    # ties go to the canonical-first endpoint
    if fl == fm:
        take_l = r.lam < r.mu
    else:
        take_l = (fl < fm) if which == "min" else (fl > fm)
    return (2 * r.a_l, 2 * r.b_l) if take_l else (2 * r.a_m, 2 * r.b_m)


def heatmap(rows: Iterable[EdgeDatasetRow], metric: str = "total-activity",
            positioning: str = "midpoint") -> HeatmapGrid:
    if metric not in HEATMAP_METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {HEATMAP_METRICS}")
    if positioning not in POSITIONINGS:
        raise ValueError(f"unknown positioning {positioning!r}; expected one of {POSITIONINGS}")
    acc: dict[tuple[int, int], list[int]] = {}
    for r in rows:
        if not r.canonical:
            continue
        cell = acc.setdefault(_position(r, positioning), [0, 0])
        cell[0] += 1
        cell[1] += _metric(r, metric)
    grid = HeatmapGrid(metric, positioning)
    grid.cells = {k: (v[0], v[1]) for k, v in sorted(acc.items())}
    return grid


def axial_counts(rows: Iterable[EdgeDatasetRow]) -> dict[str, int]:
    c = Counter(r.axial for r in rows)
    return {k: c.get(k, 0) for k in ("inward", "outward", "neutral")}


# -------------------------------------------------------------------- report

@dataclass(frozen=True)
class ReportOptions:
    heatmap_metrics: tuple[str, ...] = ("total-activity",)
    positioning: str = "midpoint"
    norm: str = "linf"
    threshold: int = 2
    boundary_invariants: tuple[str, ...] = ("d", "delta", "sigma")
    verify: bool = False


@dataclass
class AtlasReport:
    n: int
    vertex_count: int
    edge_count: int
    jump_ranges: dict
    signed_spectrum: list
    absolute_spectrum: list
    component_spectra: dict
    signed_histograms: dict[str, Histogram]
    absolute_histograms: dict[str, Histogram]
    rank_table: RankTable
    active_set_table: dict[str, int]
    signed_joint_counts: dict
    absolute_joint_counts: dict
    boundary_counts: list
    heatmaps: list[HeatmapGrid]
    large_jumps: LargeJumpSet
    axial_counts: dict[str, int]
    options: ReportOptions
    verification: object = None


class ReportConsistencyError(RuntimeError):
    pass


def summarize(rows: Sequence[EdgeDatasetRow], n: int, vertex_count: int,
              options: ReportOptions = ReportOptions()) -> AtlasReport:
    """Aggregate every atlas table from the dataset rows."""
    edge_count = sum(1 for r in rows if r.canonical)
    report = AtlasReport(
        n=n,
        vertex_count=vertex_count,
        edge_count=edge_count,
        jump_ranges=jump_ranges(rows),
        signed_spectrum=signed_spectrum(rows),
        absolute_spectrum=absolute_spectrum(rows),
        component_spectra=component_spectra(rows),
        signed_histograms={f: histogram(rows, f, True) for f in HISTOGRAM_INVARIANTS},
        absolute_histograms={f: histogram(rows, f, False) for f in HISTOGRAM_INVARIANTS},
        rank_table=rank_table(rows),
        active_set_table=active_set_table(rows),
        signed_joint_counts=joint_counts(rows, True),
        absolute_joint_counts=joint_counts(rows, False),
        boundary_counts=[row for f in options.boundary_invariants
                         for row in boundary_counts(rows, f)],
        heatmaps=[heatmap(rows, m, options.positioning) for m in options.heatmap_metrics],
        large_jumps=large_jump_edges(rows, options.norm, options.threshold),
        axial_counts=axial_counts(rows),
        options=options,
    )
    _check_report(report, len(rows))
    return report


def _check_report(rep: AtlasReport, oriented: int) -> None:
    problems = []
    if oriented != 2 * rep.edge_count:
        problems.append(f"oriented rows {oriented} != 2 * edges {rep.edge_count}")
    if rep.rank_table.total != rep.edge_count:
        problems.append("rank table does not sum to |E|")
    if sum(rep.active_set_table.values()) != rep.edge_count:
        problems.append("active-set classes do not partition E")
    max_abs = rep.jump_ranges["dsigma"]["max_abs"]
    if max_abs is not None and max_abs > 2:
        problems.append(f"max |dsigma| = {max_abs} exceeds 2")
    for grid in rep.heatmaps:
        if grid.edge_count != rep.edge_count:
            problems.append(f"heatmap {grid.metric} covers {grid.edge_count} edges")
    if problems:
        raise ReportConsistencyError("; ".join(problems))


def build_report(n: int, options: ReportOptions = ReportOptions(),
                 backend: str | None = None) -> tuple[AtlasReport, list[EdgeDatasetRow]]:
    """Build G_n, its edge dataset and the aggregated report."""
    g = build_graph(n)
    table = invariant_table(g, backend=backend)
    rows = edge_dataset(g, table, backend=backend)
    report = summarize(rows, n, len(g), options)
    if options.verify:
        from .verify import verify_graph
        report.verification = verify_graph(g, table, rows)
    return report, rows
