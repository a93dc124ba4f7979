import dataclasses
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from partition_atlas.atlas import (
    CSV_HEADER,
    HEATMAP_METRICS,
    HISTOGRAM_INVARIANTS,
    NORMS,
    POSITIONINGS,
    ReportConsistencyError,
    ReportOptions,
    active_set_table,
    build_edge_dataset,
    build_report,
    heatmap,
    histogram,
    joint_counts,
    large_jump_edges,
    rank_table,
    summarize,
    unoriented_rows,
)

from conftest import P, graph, rows


def test_header_exact():
    assert CSV_HEADER == (
        "n,lambda,mu,d_l,d_m,delta_l,delta_m,sigma_l,sigma_m,a_l,b_l,a_m,b_m,"
        "adist_l,adist_m,dd,ddelta,dsigma,da,db,dadist,rank,active_set,"
        "sign_pattern,taxonomy,axial,rho,l1,linf")


def test_g4_dataset():
    rs = rows(4)
    assert len(rs) == 10 and len(unoriented_rows(rs)) == 5
    row = next(r for r in rs if (r.lam, r.mu) == (P("[3,1]"), P("[2,1,1]")))
    assert row.signature == (0, 0, 0) and row.rank == 0 and row.rho == 4
    assert row.active_set == "-" and row.taxonomy == "neutral"
    assert list(rs) == sorted(rs, key=lambda r: (r.lam, r.mu))


def test_g1_empty_dataset():
    rep, rs = build_report(1)
    assert rs == [] and rep.edge_count == 0 and rep.vertex_count == 1
    assert rep.rank_table.tau is None and rep.rank_table.dominant_rank is None
    assert rep.jump_ranges["dsigma"]["max_abs"] is None


def test_g8_contains_support_jump_two():
    row = next(r for r in rows(8) if (r.lam, r.mu) == (P("[4,4]"), P("[4,3,1]")))
    assert row.dsigma == 2 and row.sigma_l == 1 and row.sigma_m == 3


def test_g4_report():
    rep, _ = build_report(4)
    assert rep.rank_table.T == (1, 0, 2, 2)
    assert rep.rank_table.tau == (Fraction(1, 5), Fraction(0), Fraction(2, 5), Fraction(2, 5))
    assert rep.rank_table.dominant_rank == 2 and rep.rank_table.dominant_tie
    assert rep.signed_histograms["sigma"].counts == {-1: 4, 0: 2, 1: 4}
    assert rep.jump_ranges["dsigma"]["max_abs"] == 1


def test_max_support_jump_g8():
    rep, _ = build_report(8)
    assert rep.jump_ranges["dsigma"]["max_abs"] == 2
    assert rep.component_spectra["dsigma"] == [-2, -1, 0, 1, 2]


@pytest.mark.parametrize("n", [3, 6, 10, 14])
def test_histogram_symmetry(n):
    rs = rows(n)
    for f in HISTOGRAM_INVARIANTS:
        h = histogram(rs, f, oriented=True)
        assert h.is_symmetric()
        assert sum(h.counts.values()) == len(rs)
        habs = histogram(rs, f, oriented=False)
        assert sum(habs.counts.values()) == graph(n).edge_count
        assert all(k >= 0 for k in habs.counts)


@pytest.mark.parametrize("n", [2, 7, 12])
def test_tables_partition_edges(n):
    rs = rows(n)
    E = graph(n).edge_count
    assert sum(rank_table(rs).T) == E
    assert sum(rank_table(rs).tau) == 1
    ast = active_set_table(rs)
    assert len(ast) == 8 and sum(ast.values()) == E
    jc = joint_counts(rs)
    assert sum(jc.values()) == len(rs)
    assert all(jc.get(tuple(-x for x in k)) == c for k, c in jc.items())
    absc = joint_counts(rs, oriented=False)
    assert sum(absc.values()) == E


def test_large_jumps_g4():
    lj = large_jump_edges(rows(4), "linf", 2)
    assert set(lj.edges) == {(P("[4]"), P("[3,1]")), (P("[2,1,1]"), P("[1,1,1,1]"))}
    assert len(large_jump_edges(rows(4), "l1", 0).edges) == 5
    assert large_jump_edges(rows(4), "linf", 99).edges == ()
    with pytest.raises(ValueError):
        large_jump_edges(rows(4), "l2", 1)
    with pytest.raises(ValueError):
        large_jump_edges(rows(4), "l1", -1)


@given(st.integers(2, 12), st.sampled_from(NORMS), st.integers(0, 6))
def test_large_jumps_monotone(n, norm, r):
    hi = set(large_jump_edges(rows(n), norm, r + 1).edges)
    lo = set(large_jump_edges(rows(n), norm, r).edges)
    assert hi <= lo


def test_heatmap_midpoint_doubled():
    grid = heatmap(rows(4), "total-activity", "midpoint")
    # (4):(a,b)=(4,1), (3,1):(3,2)
    assert (7, 3) in grid.cells
    assert grid.cells[(7, 3)] == (1, 4)
    assert grid.edge_count == 5


def test_heatmap_constant_metric():
    rs = [dataclasses.replace(r, dsigma=1 if r.canonical else -1) for r in rows(9)]
    grid = heatmap(rs, "abs-dsigma", "midpoint")
    assert all(grid.mean(c) == 1 for c in grid.cells)


def test_heatmap_g6_covers_edges():
    g = graph(6)
    expected = Counter()
    for e in g.unoriented_edges():
        lam, mu = g.vertices[e.lo], g.vertices[e.hi]
        expected[(lam.largest + mu.largest, lam.length + mu.length)] += 1
    grid = heatmap(rows(6), "total-activity", "midpoint")
    assert {k: c for k, (c, _) in grid.cells.items()} == dict(expected)
    assert grid.edge_count == 17


@pytest.mark.parametrize("positioning", POSITIONINGS)
@pytest.mark.parametrize("metric", HEATMAP_METRICS)
def test_heatmap_positionings(metric, positioning):
    grid = heatmap(rows(10), metric, positioning)
    assert grid.edge_count == graph(10).edge_count
    if positioning != "midpoint":
        assert all(x % 2 == 0 and y % 2 == 0 for x, y in grid.cells)


def test_heatmap_rejects_unknown():
    with pytest.raises(ValueError):
        heatmap(rows(4), "degree", "midpoint")
    with pytest.raises(ValueError):
        heatmap(rows(4), "total-activity", "centroid")


def test_axial_counts_balanced():
    rep, rs = build_report(11)
    c = rep.axial_counts
    assert c["inward"] == c["outward"] and sum(c.values()) == len(rs)


def test_summarize_detects_inconsistency():
    rs = rows(5)
    with pytest.raises(ReportConsistencyError):
        summarize(rs[:-1], 5, len(graph(5)))
    bad = [dataclasses.replace(r, dsigma=3) if i == 0 else r for i, r in enumerate(rs)]
    with pytest.raises(ReportConsistencyError):
        summarize(bad, 5, len(graph(5)))


def test_report_options_propagate():
    opts = ReportOptions(heatmap_metrics=HEATMAP_METRICS, positioning="min-adist",
                         norm="l1", threshold=3, boundary_invariants=("sigma",))
    rep, _ = build_report(7, opts)
    assert [g.metric for g in rep.heatmaps] == list(HEATMAP_METRICS)
    assert {row[0] for row in rep.boundary_counts} == {"sigma"}
    assert rep.large_jumps.norm == "l1" and rep.large_jumps.threshold == 3


def test_verify_option_attaches_results():
    rep, _ = build_report(6, ReportOptions(verify=True))
    assert rep.verification.all_passed


def test_backends_give_same_dataset():
    from partition_atlas import kernels
    if "cython" not in kernels.available_backends():
        pytest.skip("compiled kernels not built")
    assert build_edge_dataset(13, backend="python") == build_edge_dataset(13, backend="cython")
