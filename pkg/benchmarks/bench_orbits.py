"""Time the compiled and pure-Python orbit labelling on double coset workloads.

Usage: python benchmarks/bench_orbits.py [--repeat N]
"""

import argparse
import time

import numpy as np

from shagraph import orbits
from shagraph.cohomology import constant_system
from shagraph.corpus import graph_from_pairs
from shagraph.groups import named_group

# (label, P count, U count, edges, group)
CASES = [
    ("hexagon / S3", 3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)], "s3"),
    ("theta 4 edges / Q8", 2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)], "q8"),
    ("K2,3 / D4", 2, 3, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)], "d4"),
    ("K3,3 minus 1 / S3", 3, 3, [(p, u) for p in range(3) for u in range(3)][:8], "s3"),
]


def bench(backend, radices, moves, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = orbits.label_orbits(radices, moves, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"]
    try:
        orbits._pick("cython")
        backends.insert(0, "cython")
    except ImportError:
        print("compiled extension not built; timing the fallback only")
    print(f"{'case':22} {'states':>10} {'classes':>8} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for label, n_p, n_u, edges, gname in CASES:
        sys_ = constant_system(graph_from_pairs(n_p, n_u, edges), named_group(gname))
        radices, moves = sys_.radices, sys_.moves()
        times, results = [], []
        for b in backends:
            t, res = bench(b, radices, moves, args.repeat)
            times.append(t)
            results.append(res)
        for res in results[1:]:
            assert np.array_equal(res[0], results[0][0]), f"backends disagree on {label}"
        speed = f"{times[-1] / times[0]:8.1f}x" if len(times) > 1 else ""
        print(f"{label:22} {orbits.state_count(radices):>10} {len(results[0][1]):>8} "
              + " ".join(f"{t:9.3f}s" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
