"""Compare the compiled and pure-Python kernels on partition graphs.

    python3 benchmarks/bench_kernels.py --n 18 20 25 --repeat 3
"""

from __future__ import annotations

import argparse
import time

from partition_atlas import kernels
from partition_atlas.graph import build_graph


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[18, 22, 25])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'n':>3} {'|V|':>6} {'|E|':>7} {'kernel':<10}" + "".join(f"{b:>12}" for b in backends)
    print(header)
    for n in args.n:
        g = build_graph(n)
        indptr, indices = g.csr
        edges = list(g.oriented_edges())
        src = [e.source for e in edges]
        dst = [e.target for e in edges]
        results = {}
        for b in backends:
            clique = best_of(lambda: kernels.local_clique_sizes(indptr, indices, backend=b), args.repeat)
            symdiff = best_of(
                lambda: kernels.edge_symmetric_differences(indptr, indices, src, dst, backend=b),
                args.repeat)
            results[b] = (clique, symdiff)
        # outputs must agree before timings mean anything
        outs = {b: (list(kernels.local_clique_sizes(indptr, indices, backend=b)),
                    list(kernels.edge_symmetric_differences(indptr, indices, src, dst, backend=b)))
                for b in backends}
        assert len({repr(v) for v in outs.values()}) == 1, "backends disagree"
        for k, label in enumerate(("clique", "symdiff")):
            print(f"{n:>3} {len(g):>6} {g.edge_count:>7} {label:<10}"
                  + "".join(f"{results[b][k]:>11.4f}s" for b in backends))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
