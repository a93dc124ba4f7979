"""Command-line driver: ``partition-atlas <command> --n 4 ...``.

Exit codes: 0 success, 1 I/O failure, 2 invalid arguments or input,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import kernels
from .atlas import (
    HEATMAP_METRICS,
    SCHEMA_VERSION,
    ReportOptions,
    build_report,
    edge_dataset,
    heatmap,
    large_jump_edges,
)
from .exports import (
    ExportError,
    boundary_to_csv,
    dataset_to_csv,
    heatmap_to_dict,
    heatmap_to_svg,
    report_to_json,
    write_text,
)
from .graph import build_graph
from .invariants import invariant_table
from .layers import Cone, InvalidPathError, boundary_rows, gradient_dag, is_corridor, longest_strict_path
from .partitions import parse_partition
from .verify import verify

N_CAP = 40
EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_values: tuple[int, ...]
    out: Path | None
    format: str
    metric: str
    position: str
    norm: str
    threshold: int
    invariant: str | None
    cone: str
    seed: int | None
    svg: bool

    def metadata(self, n: int | None = None) -> dict:
        """Effective configuration echoed into outputs (the output directory is omitted)."""
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "n": n,
            "n_values": list(self.n_values),
            "format": self.format,
            "metric": self.metric,
            "position": self.position,
            "norm": self.norm,
            "threshold": self.threshold,
            "invariant": self.invariant,
            "cone": self.cone,
            "seed": self.seed,
        }


def parse_n(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"--n expects an integer or a..b range, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"invalid n range {text!r}")
    return tuple(range(lo, hi + 1))


def _config(args: argparse.Namespace) -> RunConfig:
    ns = parse_n(args.n)
    if max(ns) > N_CAP and not args.allow_large:
        raise UsageError(f"n={max(ns)} exceeds {N_CAP}; pass --allow-large to proceed")
    if args.threshold < 0:
        raise UsageError("--threshold must be non-negative")
    try:
        Cone.parse(args.cone)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return RunConfig(
        command=args.command,
        n_values=ns,
        out=Path(args.out) if args.out else None,
        format=args.format,
        metric=args.metric,
        position=args.position,
        norm=args.norm,
        threshold=args.threshold,
        invariant=args.invariant,
        cone=args.cone,
        seed=args.seed,
        svg=args.svg,
    )


def _emit(cfg: RunConfig, name: str, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        write_text(cfg.out / name, text)


def _dataset_json(rows, metadata: dict) -> str:
    from .atlas import COLUMNS

    payload = {
        "schema": SCHEMA_VERSION,
        "config": metadata,
        "rows": [{col: (str(v) if col in ("lambda", "mu") else v)
                  for col, attr in COLUMNS for v in [getattr(r, attr)]} for r in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def cmd_build(cfg: RunConfig) -> int:
    out = cfg.out or Path("atlas-out")
    options = ReportOptions(heatmap_metrics=(cfg.metric,), positioning=cfg.position,
                            norm=cfg.norm, threshold=cfg.threshold)
    for n in cfg.n_values:
        meta = cfg.metadata(n)
        report, rows = build_report(n, options)
        if cfg.format == "csv":
            write_text(out / f"edges_n{n}.csv", dataset_to_csv(rows, meta))
            write_text(out / f"boundary_n{n}.csv", boundary_to_csv(report.boundary_counts, meta))
        else:
            write_text(out / f"edges_n{n}.json", _dataset_json(rows, meta))
        write_text(out / f"report_n{n}.json", report_to_json(report, meta))
        if cfg.svg:
            for grid in report.heatmaps:
                write_text(out / f"heatmap_{grid.metric}_n{n}.svg", heatmap_to_svg(grid))
        print(f"n={n}: {report.vertex_count} vertices, {report.edge_count} edges, "
              f"T={list(report.rank_table.T)} -> {out}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    ok = True
    for n in cfg.n_values:
        rep = verify(n)
        print(rep.format_table())
        if rep.facts.get("dsigma_2_realized"):
            print(f"  support jump of 2 realized in G_{n}")
        if cfg.out is not None:
            payload = {"config": cfg.metadata(n), **rep.to_dict()}
            write_text(cfg.out / f"verify_n{n}.json", json.dumps(payload, indent=2) + "\n")
        ok = ok and rep.all_passed
    print("all properties passed" if ok else "PROPERTY FAILURES")
    return EXIT_OK if ok else EXIT_VERIFY


def _read_paths(path: Path) -> list[tuple[int, list]]:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read path file {path}: {exc.strerror or exc}") from None
    paths = []
    for lineno, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            paths.append((lineno, [parse_partition(tok) for tok in s.split()]))
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return paths


def cmd_corridors(cfg: RunConfig, path_file: str | None) -> int:
    supplied = _read_paths(Path(path_file)) if path_file else []
    cone = Cone.parse(cfg.cone)
    names = (cfg.invariant,) if cfg.invariant else ("d", "delta", "sigma", "adist")
    for n in cfg.n_values:
        g = build_graph(n)
        table = invariant_table(g)
        for lineno, path in supplied:
            for lam in path:
                if lam.weight != n:
                    raise UsageError(f"{path_file}:{lineno}: {lam} is not a partition of {n}")
        result = {"config": cfg.metadata(n), "longest_strict_paths": [], "validation": []}
        lines = [f"n={n}"]
        for f in names:
            length, witness = longest_strict_path(gradient_dag(table, f))
            bound = len(set(table.values(f))) - 1
            result["longest_strict_paths"].append({
                "invariant": f, "length": length, "bound": bound,
                "within_bound": length <= bound,
                "witness": [str(g.vertices[v]) for v in witness],
            })
            lines.append(f"  {f}: longest strict path {length} (bound {bound}) "
                         + " ".join(str(g.vertices[v]) for v in witness))
        for lineno, path in supplied:
            entry = {"line": lineno, "path": [str(p) for p in path], "cone": str(cone)}
            try:
                check = is_corridor(table, path, cone)
            except InvalidPathError as exc:
                entry.update(accepted=False, error=str(exc))
                lines.append(f"  line {lineno}: invalid path ({exc})")
            else:
                entry.update(accepted=check.ok, failed_step=check.failed_step,
                             signature=list(check.signature) if check.signature else None)
                verdict = "accepted" if check.ok else (
                    f"rejected at step {check.failed_step} J={tuple(check.signature)}")
                lines.append(f"  line {lineno}: cone {cone} {verdict}")
            result["validation"].append(entry)
        print("\n".join(lines))
        if cfg.out is not None:
            write_text(cfg.out / f"corridors_n{n}.json", json.dumps(result, indent=2) + "\n")
    return EXIT_OK


def _rows(n: int):
    g = build_graph(n)
    table = invariant_table(g)
    return g, table, edge_dataset(g, table)


def cmd_heatmap(cfg: RunConfig) -> int:
    for n in cfg.n_values:
        _, _, rows = _rows(n)
        grid = heatmap(rows, cfg.metric, cfg.position)
        payload = {"config": cfg.metadata(n), **heatmap_to_dict(grid)}
        _emit(cfg, f"heatmap_{cfg.metric}_n{n}.json", json.dumps(payload, indent=2) + "\n")
        if cfg.svg:
            _emit(cfg, f"heatmap_{cfg.metric}_n{n}.svg", heatmap_to_svg(grid))
    return EXIT_OK


def cmd_boundary(cfg: RunConfig) -> int:
    names = (cfg.invariant,) if cfg.invariant else ("d", "delta", "sigma")
    for n in cfg.n_values:
        g = build_graph(n)
        table = invariant_table(g)
        rows = [row for f in names for row in boundary_rows(table, f)]
        _emit(cfg, f"boundary_n{n}.csv", boundary_to_csv(rows, cfg.metadata(n)))
    return EXIT_OK


def cmd_large_jumps(cfg: RunConfig) -> int:
    for n in cfg.n_values:
        _, _, rows = _rows(n)
        sel = large_jump_edges(rows, cfg.norm, cfg.threshold)
        text = (f"# config: {json.dumps(cfg.metadata(n), sort_keys=True, separators=(',', ':'))}\n"
                f"# norm={sel.norm} threshold={sel.threshold} edges={len(sel.edges)}\n"
                + "".join(f"{a} {b}\n" for a, b in sel.edges))
        _emit(cfg, f"large_jumps_{sel.norm}_{sel.threshold}_n{n}.txt", text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", required=True, help="weight n, or an inclusive range a..b")
    common.add_argument("--out", help="output directory (stdout when omitted, except build)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--metric", choices=HEATMAP_METRICS, default="total-activity")
    common.add_argument("--position", choices=("midpoint", "min-adist"), default="midpoint")
    common.add_argument("--norm", choices=("l1", "linf"), default="linf")
    common.add_argument("--threshold", type=int, default=2)
    common.add_argument("--invariant", choices=("d", "delta", "sigma", "adist"))
    common.add_argument("--cone", default="+++",
                        help="three of + - 0 * ! for (d, delta, sigma), optional /strict")
    common.add_argument("--seed", type=int, default=None, help="reserved; all runs are deterministic")
    common.add_argument("--allow-large", action="store_true", help=f"permit n > {N_CAP}")
    common.add_argument("--svg", action="store_true", help="also render heatmaps as SVG")

    parser = argparse.ArgumentParser(prog="partition-atlas", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s ({SCHEMA_VERSION}, kernels: {kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="edge dataset and atlas report")
    sub.add_parser("verify", parents=[common], help="run the structural property suite")
    cor = sub.add_parser("corridors", parents=[common], help="longest strict paths and cone checks")
    cor.add_argument("--paths", help="file with one whitespace-separated partition path per line")
    sub.add_parser("heatmap", parents=[common], help="(a,b)-plane activity grid")
    sub.add_parser("boundary", parents=[common], help="threshold-layer boundary counts")
    sub.add_parser("large-jumps", parents=[common], help="edges with large jump activity")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.command == "build":
            return cmd_build(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        if cfg.command == "corridors":
            return cmd_corridors(cfg, args.paths)
        if cfg.command == "heatmap":
            return cmd_heatmap(cfg)
        if cfg.command == "boundary":
            return cmd_boundary(cfg)
        return cmd_large_jumps(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
