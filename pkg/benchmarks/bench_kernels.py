"""Benchmark: compiled kernels versus the pure-Python fallback.

Times the two hot paths (subgroup-lattice closure and vertex-disjoint
path counting) on representative catalog groups, calling both backends
directly on identical inputs.

Usage:
    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time
from itertools import combinations

from intgraph import _kernels_py
from intgraph import catalog
from intgraph.lattice import all_subgroups
from intgraph.graphs import build_graph

try:
    from intgraph import _fastkernels
except ImportError:
    _fastkernels = None

LATTICE_LABELS = ["Z4xZ4xZ2xZ2", "Z7^2:Z3:lam2", "G81:k1m0n-1", "S4"]
FLOW_LABELS = ["Z4xZ4xZ2xZ2", "Z8xZ2xZ2xZ2", "Z7^2:Z3:lam2", "A5"]


def time_closure(backend, G, repeat):
    prep = backend.prepare_table(G.table)
    step = max(1, G.order // 12)
    singles = list(range(0, G.order, step))
    seeds = [(x,) for x in singles] + list(combinations(singles, 2))
    t0 = time.perf_counter()
    for _ in range(repeat):
        for seed in seeds:
            backend.subgroup_closure(prep, G.identity, seed)
    return (time.perf_counter() - t0) / repeat


def time_flow(backend, g, repeat):
    neighbors = [g.neighbors(i) for i in range(g.n)]
    prep = backend.prepare_graph(neighbors)
    mins = g.minimal_vertex_indices()
    pairs = list(combinations(mins, 2))[:40]
    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in pairs:
            backend.vertex_disjoint_paths(prep, a, b, g.adjacent(a, b), -1)
    return (time.perf_counter() - t0) / repeat


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _fastkernels is None:
        print("compiled kernels not available; showing pure-Python timings only")
    backends = [("pure", _kernels_py)]
    if _fastkernels is not None:
        backends.append(("compiled", _fastkernels))

    print(f"{'kernel':<10} {'group':<16} " + " ".join(f"{n:>12}" for n, _ in backends) + f" {'speedup':>9}")
    for label in LATTICE_LABELS:
        G = catalog.get_group(label)
        times = [time_closure(impl, G, args.repeat) for _, impl in backends]
        ratio = times[0] / times[-1] if len(times) > 1 and times[-1] > 0 else 1.0
        cells = " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
        print(f"{'closure':<10} {label:<16} {cells} {ratio:>8.1f}x")
    for label in FLOW_LABELS:
        G = catalog.get_group(label)
        g = build_graph(all_subgroups(G))
        times = [time_flow(impl, g, args.repeat) for _, impl in backends]
        ratio = times[0] / times[-1] if len(times) > 1 and times[-1] > 0 else 1.0
        cells = " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
        print(f"{'flow':<10} {label:<16} {cells} {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
