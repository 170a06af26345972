"""Time the numba and numpy kernel implementations side by side.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Both paths are looked up in ``_kernels.IMPLEMENTATIONS``, so one process
measures both; numba compile time is excluded by a warm-up call.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import time

import numpy as np

from sgwb import _kernels
from sgwb.constructions import brandt, direct_product
from sgwb.corpus import random_tables
from sgwb.semigroup import cyclic_group, full_transformation_monoid, klein_four, right_zero


def _cases():
    big = direct_product(full_transformation_monoid(3), right_zero(4)).semigroup  # order 108
    brandt_big = brandt(klein_four(), 7).semigroup  # order 197
    rng = random.Random(0)
    seeds_for = lambda S, k: np.array([(rng.randrange(S.order), rng.randrange(S.order)) for _ in range(k)],
                                      dtype=np.int64)
    eight = random_tables(4, 1, seed=5)[0]
    eight = direct_product(eight, cyclic_group(2)).semigroup
    return [
        ("assoc_witness", f"B(V4,7) order {brandt_big.order}", (brandt_big.mul,)),
        ("assoc_witness", f"T3xRZ4 order {big.order}", (big.mul,)),
        ("saturate", f"B(V4,7), 3 pairs", (brandt_big.mul, seeds_for(brandt_big, 3))),
        ("saturate", f"T3xRZ4, 20 pairs", (big.mul, seeds_for(big, 20))),
        ("compat_witness", f"T3xRZ4, universal", (big.mul, np.zeros(big.order, dtype=np.int64))),
        ("compatible_partitions", f"order-8 table", (eight.mul,)),
        ("compatible_partitions", "RZ7", (right_zero(7).mul,)),
    ]


def _time(func, args, repeat):
    func(*args)  # warm-up (and numba compilation)
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func(*args)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--json", help="also write the rows to this file")
    a = p.parse_args(argv)
    backends = [b for b in ("numpy", "numba") if b in _kernels.IMPLEMENTATIONS]
    rows = []
    header = f"{'kernel':24s} {'case':28s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup"
    print(header)
    print("-" * len(header))
    for name, label, args in _cases():
        args = tuple(np.ascontiguousarray(x, dtype=np.int64) for x in args)
        times = {b: _time(_kernels.IMPLEMENTATIONS[b][name], args, a.repeat) for b in backends}
        speed = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        rows.append({"kernel": name, "case": label, "seconds": times, "speedup": speed})
        cells = " ".join(f"{times[b] * 1e3:9.2f}ms" for b in backends)
        print(f"{name:24s} {label:28s} {cells}   {speed:6.1f}x")
    if a.json:
        with open(a.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
