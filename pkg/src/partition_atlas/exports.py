"""Deterministic CSV, JSON and SVG serialization of atlas artifacts."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from pathlib import Path
from typing import Any, Iterable

from .atlas import (
    COLUMNS,
    CSV_HEADER,
    SCHEMA_VERSION,
    AtlasReport,
    EdgeDatasetRow,
    HeatmapGrid,
)
from .layers import BOUNDARY_CSV_HEADER
from .partitions import parse_partition

_PARTITION_COLS = {"lambda", "mu"}
_STRING_COLS = {"active_set", "sign_pattern", "taxonomy", "axial"}


class ExportError(OSError):
    pass


def _meta_line(metadata: dict | None) -> str:
    if metadata is None:
        return ""
    return "# config: " + json.dumps(metadata, sort_keys=True, separators=(",", ":")) + "\n"


def dataset_to_csv(rows: Iterable[EdgeDatasetRow], metadata: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(_meta_line(metadata))
    buf.write(CSV_HEADER + "\n")
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow([str(getattr(r, attr)) for _, attr in COLUMNS])
    return buf.getvalue()


def dataset_from_csv(text: str) -> list[EdgeDatasetRow]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("edge dataset CSV header does not match the schema")
    rows = []
    for rec in csv.DictReader(lines):
        kwargs: dict[str, Any] = {}
        for col, attr in COLUMNS:
            raw = rec[col]
            if col in _PARTITION_COLS:
                kwargs[attr] = parse_partition(raw)
            elif col in _STRING_COLS:
                kwargs[attr] = raw
            else:
                kwargs[attr] = int(raw)
        rows.append(EdgeDatasetRow(**kwargs))
    return rows


def boundary_to_csv(rows: Iterable[tuple], metadata: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(_meta_line(metadata))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BOUNDARY_CSV_HEADER)
    w.writerows(rows)
    return buf.getvalue()


def _frac(x) -> dict[str, Any]:
    return {"numerator": x.numerator, "denominator": x.denominator,
            "decimal": f"{float(x):.6f}"}


def _half(v: int) -> int | float:
    return v // 2 if v % 2 == 0 else v / 2


def heatmap_to_dict(grid: HeatmapGrid) -> dict[str, Any]:
    return {
        "metric": grid.metric,
        "positioning": grid.positioning,
        "cells": [
            {"a": _half(x), "b": _half(y), "count": c, "mean": _frac(grid.mean((x, y)))}
            for (x, y), (c, _) in grid.cells.items()
        ],
    }


def report_to_dict(rep: AtlasReport, metadata: dict | None = None) -> dict[str, Any]:
    rt = rep.rank_table
    out: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "config": metadata if metadata is not None else {"options": asdict(rep.options)},
        "n": rep.n,
        "vertex_count": rep.vertex_count,
        "edge_count": rep.edge_count,
        "oriented_edge_count": 2 * rep.edge_count,
        "jump_ranges": rep.jump_ranges,
        "signed_spectrum": [list(t) for t in rep.signed_spectrum],
        "absolute_spectrum": [list(t) for t in rep.absolute_spectrum],
        "component_spectra": rep.component_spectra,
        "signed_histograms": {k: {str(j): c for j, c in h.counts.items()}
                              for k, h in rep.signed_histograms.items()},
        "absolute_histograms": {k: {str(j): c for j, c in h.counts.items()}
                                for k, h in rep.absolute_histograms.items()},
        "rank_table": {
            "T": list(rt.T),
            "tau": [_frac(x) for x in rt.tau] if rt.tau else None,
            "dominant_rank": rt.dominant_rank,
            "dominant_tie": rt.dominant_tie,
        },
        "active_set_table": rep.active_set_table,
        "signed_joint_counts": [[*k, c] for k, c in rep.signed_joint_counts.items()],
        "absolute_joint_counts": [[*k, c] for k, c in rep.absolute_joint_counts.items()],
        "boundary_counts": [dict(zip(BOUNDARY_CSV_HEADER, row)) for row in rep.boundary_counts],
        "heatmaps": [heatmap_to_dict(g) for g in rep.heatmaps],
        "large_jump_edges": {
            "norm": rep.large_jumps.norm,
            "threshold": rep.large_jumps.threshold,
            "edges": [[str(a), str(b)] for a, b in rep.large_jumps.edges],
        },
        "axial_counts": rep.axial_counts,
        "verification": rep.verification.to_dict() if rep.verification is not None else None,
    }
    return out


def report_to_json(rep: AtlasReport, metadata: dict | None = None) -> str:
    return json.dumps(report_to_dict(rep, metadata), indent=2) + "\n"


def heatmap_to_svg(grid: HeatmapGrid, cell_px: int = 20) -> str:
    """Grayscale rendering: darker cells carry a larger mean metric."""
    if not grid.cells:
        return ('<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0">'
                '</svg>\n')
    xs = [x for x, _ in grid.cells]
    ys = [y for _, y in grid.cells]
    x0, y0 = min(xs), min(ys)
    width = (max(xs) - x0 + 1) * cell_px
    height = (max(ys) - y0 + 1) * cell_px
    top = max(grid.mean(c) for c in grid.cells) or 1
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f"<title>{grid.metric} by {grid.positioning}</title>",
    ]
    for (x, y) in grid.cells:
        level = round(255 * (1 - grid.mean((x, y)) / top))
        # b grows downward, a grows rightward
        parts.append(
            f'<rect x="{(x - x0) * cell_px}" y="{(y - y0) * cell_px}" '
            f'width="{cell_px}" height="{cell_px}" fill="rgb({level},{level},{level})"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_text(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
