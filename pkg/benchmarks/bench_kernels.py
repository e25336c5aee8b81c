"""Compare the compiled and pure-Python scan kernels on flat enumerations.

    python benchmarks/bench_kernels.py [--repeat 3] [--threads 1 4]
"""

import argparse
import time

from negehrhart.constructions import paper_family, reeve
from negehrhart.counting import KERNELS, candidate_points, count_lattice_points

CASES = [
    ("reeve(13), n=20", reeve(13), 20),
    ("reeve(100), n=15", reeve(100), 15),
    ("paper_family(4, 19) flat, n=8", paper_family(4, 19), 8),
    ("paper_family(5, 37) flat, n=4", paper_family(5, 37), 4),
    ("reeve(300), n=25", reeve(300), 25),
]


def best_of(repeat, fn):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threads", type=int, nargs="+", default=[1, 4])
    args = parser.parse_args()

    kernels = sorted(KERNELS)
    print(f"kernels available: {', '.join(kernels)}")
    header = f"{'case':34} {'points':>10} {'threads':>7} " + " ".join(f"{k:>10}" for k in kernels)
    if "cython" in KERNELS:
        header += f" {'speedup':>8}"
    print(header)
    for label, P, n in CASES:
        points = candidate_points(P, n, factorize=False)
        for threads in args.threads:
            row = {}
            counts = set()
            for k in kernels:
                t, c = best_of(args.repeat, lambda: count_lattice_points(
                    P, n, factorize=False, kernel=k, threads=threads, slabs=4 * threads))
                row[k] = t
                counts.add(c)
            assert len(counts) == 1, f"kernels disagree on {label}: {counts}"
            line = f"{label:34} {points:>10} {threads:>7} " + " ".join(f"{row[k]:>9.3f}s" for k in kernels)
            if "cython" in row:
                line += f" {row['python'] / row['cython']:>7.1f}x"
            print(line)


if __name__ == "__main__":
    main()
