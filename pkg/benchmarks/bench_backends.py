"""Time the compiled kernels against the pure-Python fallback.

Usage::

    python benchmarks/bench_backends.py [--repeat 5]

Reports the best wall time per backend for a batch of children and for a full
four-variant experiment, and checks that both backends give identical output.
"""

import argparse
import time

import numpy as np

from rsdm import RandomStream, VariantConfig, VARIANT_NAMES
from rsdm import _backend
from rsdm.harness import ExperimentSpec, run_experiment


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def spawn_batch(label):
    g = np.random.default_rng(1)
    X = g.normal(size=(20, 3))
    S = g.exponential(size=20)
    K = g.normal(size=(20, 3))
    kern = _backend.get()
    return kern.spawn_children(X, S, K, 500, VariantConfig.from_name(label), RandomStream(2))


def experiment():
    curves = []
    for fn in ("F1", "F6", "F9"):
        curves += run_experiment(ExperimentSpec(fn, VARIANT_NAMES, replicates=10))
    return [c.values for c in curves]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()

    backends = _backend.available()
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is available")
    results = {}
    for name in backends:
        prev = _backend.use(name)
        try:
            row = {}
            for label in VARIANT_NAMES:
                row[label] = best_of(lambda: spawn_batch(label), args.repeat)
            row["experiment"] = best_of(experiment, max(1, args.repeat // 2))
        finally:
            _backend.use(prev)
        results[name] = row

    tasks = list(next(iter(results.values())))
    print(f"{'task':<22}" + "".join(f"{b:>12}" for b in results)
          + ("     speedup" if len(results) == 2 else ""))
    for task in tasks:
        label = f"spawn 10000 {task}" if task != "experiment" else "F1+F6+F9 x4 x10"
        times = [results[b][task][0] for b in results]
        line = f"{label:<22}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[1] / times[0]:>11.1f}x"
        print(line)

    if len(results) == 2:
        a, b = (results[n] for n in backends)
        same = all(
            all(np.array_equal(u, v) for u, v in zip(a[t][1], b[t][1])) for t in tasks
        )
        print("outputs identical:", same)


if __name__ == "__main__":
    main()
