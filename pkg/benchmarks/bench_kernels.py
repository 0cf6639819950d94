"""Wall-clock comparison of the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each kernel is run once untimed per backend so JIT compilation is excluded.
"""
import argparse
import time

import numpy as np

from randkol import kernels
from randkol.sources import parse_spec


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(quick):
    scale = 10 if quick else 1
    n_stream = 10**7 // scale
    for text in ("classic:1,2", "iid:p=0.3,a=1,b=2", "markov:p=0.7,a=1,b=3", "selfref"):
        src = kernels.KernelSource.from_spec(parse_spec(text))
        cps = np.array([n_stream], dtype=np.int64)
        yield f"stream {text} n={n_stream:.0e}", lambda b, s=src, c=cps: kernels.stream_counts(s, 1, n_stream, c, name=b)
    src = kernels.KernelSource.from_spec(parse_spec("iid:p=0.5,a=1,b=2"))
    trials = 10**5 // scale
    yield f"pointwise n=1000 trials={trials}", lambda b: kernels.pointwise_hits(src, 1, 1000, 0, trials, name=b)
    n_enum = 16 if quick else 20
    yield f"enumeration n={n_enum}", lambda b: kernels.enum_counts(n_enum, 1, 2, kernels.MODE_IID, 1, n_enum - 4,
                                                                     n_enum - 1, name=b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="Ten times smaller instances.")
    args = ap.parse_args()
    names = [b for b in ("numba", "numpy") if b in kernels.BACKENDS]
    print(f"{'case':<44}" + "".join(f"{b:>12}" for b in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases(args.quick):
        t = [best_of(lambda b=b: fn(b), args.repeat) for b in names]
        row = f"{label:<44}" + "".join(f"{x:>11.4f}s" for x in t)
        if len(t) == 2:
            row += f"{t[1] / t[0]:>11.1f}x"
        print(row, flush=True)


if __name__ == "__main__":
    main()
