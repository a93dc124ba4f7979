import json

import pytest

from partition_atlas.atlas import CSV_HEADER, build_report, heatmap
from partition_atlas.exports import (
    ExportError,
    boundary_to_csv,
    dataset_from_csv,
    dataset_to_csv,
    heatmap_to_svg,
    report_to_dict,
    report_to_json,
    write_text,
)

from conftest import rows


@pytest.mark.parametrize("n", [1, 4, 9])
def test_csv_roundtrip(n):
    rs = rows(n)
    text = dataset_to_csv(rs, {"n": n})
    assert text.splitlines()[0].startswith("# config: ")
    assert text.splitlines()[1] == CSV_HEADER
    assert len(text.splitlines()) == 2 + len(rs)
    assert dataset_from_csv(text) == list(rs)
    assert dataset_from_csv(dataset_to_csv(rs)) == list(rs)


def test_csv_partition_quoting():
    line = dataset_to_csv(rows(4)).splitlines()[1]
    assert line.startswith('4,[4],"[3,1]",')


def test_csv_header_mismatch():
    with pytest.raises(ValueError):
        dataset_from_csv("n,lambda\n4,[4]\n")


def test_report_json_deterministic():
    a = report_to_json(build_report(8)[0], {"n": 8})
    b = report_to_json(build_report(8)[0], {"n": 8})
    assert a == b
    d = json.loads(a)
    assert d["schema"] == "atlas-schema 1" and d["config"] == {"n": 8}
    assert d["oriented_edge_count"] == 2 * d["edge_count"]
    assert sum(d["rank_table"]["T"]) == d["edge_count"]


def test_report_tau_exact():
    d = report_to_dict(build_report(4)[0])
    assert [(t["numerator"], t["denominator"]) for t in d["rank_table"]["tau"]] == [
        (1, 5), (0, 1), (2, 5), (2, 5)]
    assert d["signed_histograms"]["sigma"] == {"-1": 4, "0": 2, "1": 4}


def test_boundary_csv():
    rep, _ = build_report(4)
    text = boundary_to_csv(rep.boundary_counts)
    lines = text.splitlines()
    assert lines[0] == "F,r,B_r,B_r_plus,B_r_minus"
    assert "d,2,2,2,2" in lines


def test_svg():
    grid = heatmap(rows(8))
    svg = heatmap_to_svg(grid)
    assert svg.count("<rect") == len(grid.cells)
    assert svg == heatmap_to_svg(heatmap(rows(8)))
    assert "<rect" not in heatmap_to_svg(heatmap([]))


def test_write_text_failure(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(ExportError):
        write_text(blocker / "sub" / "out.csv", "data")
    assert write_text(tmp_path / "a" / "b.txt", "ok").read_text() == "ok"
