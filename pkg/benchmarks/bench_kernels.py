"""Time each kernel backend on the hot operations and print a table.

Usage:
    python benchmarks/bench_kernels.py [--trials 1000000] [--repeats 5]

Both backends produce bit-identical output (enforced by the test suite);
this script only measures speed, and verifies equality once per operation
as a sanity check.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bellkit import _kernels
from bellkit.sampler import conditional_thresholds


def best_time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=1000000,
                        help="per-operation problem size")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats (best is reported)")
    args = parser.parse_args()

    backends = _kernels.available_backends()
    if len(backends) < 2:
        print("only one backend available:", ", ".join(backends))

    n = args.trials
    seed = 42
    t_a = conditional_thresholds(0.9)
    t_ap = conditional_thresholds(2.1)
    t_bp = conditional_thresholds(1.3)
    pm1 = np.where(np.random.default_rng(0).random(n) < 0.5, -1, 1)
    pm1 = pm1.astype(np.int8)
    cand = pm1[::-1].copy()

    cases = {
        "uniforms": lambda mod: mod.uniforms(seed, 0, n),
        "sample_pair": lambda mod: mod.sample_pair(n, seed, *t_a),
        "sample_triple": lambda mod: mod.sample_triple(n, seed, *t_a, *t_ap),
        "sample_quad": lambda mod: mod.sample_quad(n, seed, *t_a, *t_ap,
                                                   *t_bp),
        "dot_pm1": lambda mod: mod.dot_pm1(pm1, cand),
        "count_plus": lambda mod: mod.count_plus(pm1),
        "match_indices": lambda mod: mod.match_indices(pm1, cand),
    }

    names = list(backends)
    width = max(len(c) for c in cases)
    header = f"{'operation':<{width}}  " + "".join(
        f"{name + ' (s)':>14}" for name in names)
    if len(names) == 2:
        header += f"  {names[1]}/{names[0]}"
    print(f"problem size: {n}, repeats: {args.repeats}")
    print(header)
    print("-" * len(header))

    for label, call in cases.items():
        outputs = {}
        times = {}
        for name in names:
            mod = backends[name]
            outputs[name] = call(mod)
            times[name] = best_time(lambda: call(mod), args.repeats)
        if len(names) == 2:
            first, second = (outputs[name] for name in names)
            if not isinstance(first, tuple):
                first, second = (first,), (second,)
            assert all(np.array_equal(x, y) for x, y in zip(first, second)), \
                f"backend outputs differ for {label}"
        row = f"{label:<{width}}  " + "".join(
            f"{times[name]:>14.6f}" for name in names)
        if len(names) == 2:
            ratio = times[names[1]] / times[names[0]]
            row += f"{ratio:>12.2f}x"
        print(row)


if __name__ == "__main__":
    main()
