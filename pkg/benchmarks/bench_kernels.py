"""Compare the compiled and pure-Python kernels on the workloads the sweeps use.

    python benchmarks/bench_kernels.py [--symbols 2|3|4|5|6] [--repeat 5]

Each row times one kernel over the same inputs on both backends and checks
the outputs agree.  Inputs come from a seeded generator.
"""
import argparse
import random
import timeit

from prefdl import _pykernels as py

try:
    from prefdl import _ckernels as cy
except ImportError:
    cy = None


def random_up(rng, size):
    rows = [0] * size
    for a in range(size):
        for b in range(size):
            if a == b or rng.random() < 0.3:
                rows[a] |= 1 << b
    worlds = (1 << size) - 1
    return py.closure(rows, worlds), worlds


def random_graph(rng, size, k):
    masks = [rng.getrandbits(size) for _ in range(k)]
    pred = [0] * k
    for j in range(k):
        for i in range(j):
            if rng.random() < 0.4:
                pred[j] |= 1 << i | pred[i]
    return masks, pred


def workloads(symbols, seed=0):
    rng = random.Random(seed)
    size = 1 << symbols
    ups = [random_up(rng, size) for _ in range(50)]
    graphs = [random_graph(rng, size, rng.randint(1, 6)) for _ in range(50)]
    raw = [[rng.getrandbits(size) for _ in range(size)] for _ in range(50)]
    full = (1 << size) - 1
    return {
        "closure": lambda k: [k.closure(r, full) for r in raw],
        "transitivity": lambda k: [k.transitivity_witness(u, w) for u, w in ups],
        "induced_up": lambda k: [k.induced_up(m, p, full, size) for m, p in graphs],
        "min_mask": lambda k: [k.min_mask(u, s) for u, w in ups for s in range(1, min(full, 255) + 1, 7)],
        "box_mask": lambda k: [k.box_mask(u, w, e, True) for u, w in ups for e in range(0, min(full, 255) + 1, 7)],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--symbols", type=int, default=3, choices=range(1, 7))
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if cy is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    print(f"{'kernel':<14}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, job in workloads(args.symbols).items():
        if job(py) != job(cy):
            raise SystemExit(f"{name}: backends disagree")
        tp = min(timeit.repeat(lambda: job(py), number=1, repeat=args.repeat)) * 1e3
        tc = min(timeit.repeat(lambda: job(cy), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<14}{tp:>12.2f}{tc:>12.2f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
