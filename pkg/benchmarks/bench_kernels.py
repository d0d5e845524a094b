"""Time the compiled and numpy Monte Carlo kernels on the same workload.

    python benchmarks/bench_kernels.py [--samples N] [--repeat R]

Both backends are run on identical arguments; the script also checks that
their integer counts agree before reporting timings.
"""
import argparse
import time

import numpy as np

from polbench import _pykernels
from polbench.estimators import RngSpec, detection_probabilities
from polbench.bench import AnalyzerSettings

try:
    from polbench import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=5_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    key = RngSpec(2024).key
    probs, _ = detection_probabilities(AnalyzerSettings.from_degrees(45, 45, 45, -45), 1.0)
    n = args.samples
    workloads = {
        "state_counts": lambda impl: impl.state_counts(key, 0, n),
        "coincidence_counts": lambda impl: impl.coincidence_counts(key, 0, n, probs),
    }
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled kernels not built; timing the numpy backend only")

    print(f"{'kernel':<20} {'backend':<8} {'seconds':>9} {'Msamples/s':>11}")
    for name, work in workloads.items():
        results = {}
        for label, impl in backends.items():
            seconds, out = best_of(lambda: work(impl), args.repeat)
            results[label] = (seconds, out)
            print(f"{name:<20} {label:<8} {seconds:9.4f} {n / seconds / 1e6:11.1f}")
        if len(results) == 2:
            a, b = results["python"][1], results["cython"][1]
            same = all(np.array_equal(x, y) for x, y in zip(np.atleast_2d(a), np.atleast_2d(b)))
            speedup = results["python"][0] / results["cython"][0]
            print(f"{'':<20} {'speedup':<8} {speedup:9.1f}x   counts identical: {same}")


if __name__ == "__main__":
    main()
