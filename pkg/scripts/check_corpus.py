"""Run the invariant suite over the exhaustive small-graph corpus and a
seeded random batch, reporting failures and timing per edge count."""

import argparse
import time
from collections import Counter, defaultdict

from activebij.checks import run_suite
from activebij.corpus import exhaustive, random_batch
from activebij.edgesets import size


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-vertices", type=int, default=5)
    ap.add_argument("--max-edges", type=int, default=7)
    ap.add_argument("--random", type=int, default=200)
    ap.add_argument("--random-edges", type=int, default=8)
    ap.add_argument("--seed", type=int, default=20261016)
    args = ap.parse_args()

    graphs = exhaustive(args.max_vertices, args.max_edges)
    graphs += random_batch(args.random, args.seed, max_edges=args.random_edges)
    counts, seconds = Counter(), defaultdict(float)
    failures = []
    for G in graphs:
        start = time.perf_counter()
        for r in run_suite(G):
            if not r.ok:
                failures.append((G, r))
        m = size(G.live)
        counts[m] += 1
        seconds[m] += time.perf_counter() - start
    for m in sorted(counts):
        print(f"{m} edges: {counts[m]:5d} graphs, {seconds[m]:7.2f} s")
    for G, r in failures:
        print(f"FAIL {r.name}: {G!r} {r.detail}")
    print(f"{len(graphs)} graphs, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
