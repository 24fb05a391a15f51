"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each workload is run on both backends; the results are checked equal before
timings are reported.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from ramsey_monoids import kernels
from ramsey_monoids.functions import catalan_generators
from ramsey_monoids.posets import _invariant_classes, enumerate_posets


def catalan_gens(n):
    return np.array([g.images for g in catalan_generators(n)], dtype=np.int64)


def workloads():
    closure_n = 9
    gens = catalan_gens(closure_n)
    E, table, parent, last = kernels.python_backend.closure_bfs(closure_n, gens, False, 10**6)
    mul = kernels.python_backend.cayley_from_right(table, parent, last, 0)
    posets = [(P.n, P.above, _invariant_classes(P)) for P in enumerate_posets(6)]
    return [
        (f"closure_bfs (Catalan n={closure_n}, {len(E)} elements)",
         lambda b: b.closure_bfs(closure_n, gens, False, 10**6)),
        (f"cayley_from_right ({len(E)}^2 table)",
         lambda b: b.cayley_from_right(table, parent, last, 0)),
        (f"cayley_from_elements ({len(E)} maps)",
         lambda b: b.cayley_from_elements(E, False)),
        (f"coset_order ({len(E)} elements)",
         lambda b: b.coset_order(mul)),
        (f"canonical_poset (all {len(posets)} posets on 6 points)",
         lambda b: [b.canonical_poset(*args) for args in posets]),
    ]


def _same(a, b):
    if isinstance(a, (tuple, list)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    return a == b


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", help="also write the results to this file")
    args = parser.parse_args(argv)

    py, cy = kernels.python_backend, kernels.compiled_backend
    if cy is None:
        print("compiled extension not available; build it with 'python setup.py build_ext --inplace'")
        return 1
    rows = []
    print(f"{'workload':58} {'python [s]':>11} {'compiled [s]':>13} {'speedup':>8}")
    for name, fn in workloads():
        if not _same(fn(py), fn(cy)):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        rows.append({"workload": name, "python": t_py, "compiled": t_cy, "speedup": t_py / t_cy})
        print(f"{name:58} {t_py:11.4f} {t_cy:13.4f} {t_py / t_cy:7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
