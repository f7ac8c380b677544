"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py --sizes 40 80 144 --repeat 3
"""

import argparse
import random
import time

import numpy as np

from polychrome._kernels import _fallback
from polychrome.generate import generate
from polychrome.ranges import dense_ranks, enumerate_ranges

try:
    from polychrome._kernels import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_enumeration(n, repeat):
    pts = list(generate("uniform-random", n, seed=n).points)
    ranks = [dense_ranks(v)[0] for v in ([p.x for p in pts], [p.y for p in pts],
                                         [p.x + p.y for p in pts])]
    row = {"kernel": "enumerate", "n": n}
    for name, mod in (("python", _fallback), ("cython", _core)):
        if mod is None:
            continue
        t, (wit, masks) = best_of(lambda: mod.enumerate_ranks(*ranks), repeat)
        row[name] = t
        row["ranges"] = len(wit)
    return row


def bench_bnb(m, repeat, seed=0):
    pts = generate("uniform-random", m, seed=seed, params={"denominator": 64}).points
    cat = enumerate_ranges(pts)
    order = sorted(range(m), key=lambda i: (pts[i].x + pts[i].y, pts[i].x, pts[i].y))
    local, sizes = cat.restrict(order)
    rng = random.Random(seed)
    first = [rng.randrange(2) for _ in range(m)]
    start = sum(1 << j for j in range(1, m, 2))
    inter = local & np.uint64(start)
    start_max = int(sizes[(inter == 0) | (inter == local)].max())
    row = {"kernel": "bnb", "n": m}
    for name, mod in (("python", _fallback), ("cython", _core)):
        if mod is None:
            continue
        t, (best, _) = best_of(lambda: mod.bnb_two_color(m, local, sizes, first, start, start_max),
                               repeat)
        row[name] = t
        row["optimum"] = best + 1
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80, 144, 200])
    ap.add_argument("--bnb-sizes", type=int, nargs="+", default=[12, 16, 20])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _core is None:
        print("compiled extension not built; timing the fallback only")
    rows = [bench_enumeration(n, args.repeat) for n in args.sizes]
    rows += [bench_bnb(m, args.repeat) for m in args.bnb_sizes]
    print(f"{'kernel':<10}{'n':>5}{'python s':>12}{'cython s':>12}{'speedup':>9}  result")
    for r in rows:
        py, cy = r.get("python"), r.get("cython")
        speed = f"{py / cy:8.1f}x" if py and cy else "       -"
        extra = f"{r['ranges']} ranges" if "ranges" in r else f"threshold {r['optimum']}"
        print(f"{r['kernel']:<10}{r['n']:>5}{py:>12.4f}{(cy or float('nan')):>12.4f}{speed}  {extra}")


if __name__ == "__main__":
    main()
