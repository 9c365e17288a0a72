"""Compare the compiled and pure-Python PAV kernels.

    python benchmarks/bench_pav.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from corp import _backend


def workloads():
    rng = np.random.default_rng(0)
    for k in (100, 1_000, 10_000):
        counts = rng.integers(1, 4, k)
        p = np.sort(rng.random(k))
        yield f"pav_blocks k={k}", "pav_blocks", (counts, rng.binomial(counts, p))
    for k, rows in ((10, 1000), (1024, 200)):
        counts = rng.integers(1, 100, k) if k == 10 else np.ones(k, dtype=np.int64)
        p = np.sort(rng.random(k))
        yield f"pav_fitted_batch k={k} rows={rows}", "pav_fitted_batch", (counts, rng.binomial(counts, p, (rows, k)))


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    names = ["python"]
    try:
        _backend.kernels("compiled")
        names.append("compiled")
    except ImportError:
        print("compiled extension not built; timing the fallback only")
    print(f"{'workload':<38}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn_name, fn_args in workloads():
        t = [best_of(getattr(_backend.kernels(n), fn_name), fn_args, args.repeat) for n in names]
        row = f"{label:<38}" + "".join(f"{v * 1e3:>10.2f}ms" for v in t)
        if len(t) == 2:
            row += f"{t[0] / t[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
