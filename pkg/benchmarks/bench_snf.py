"""Compare the compiled and pure-Python Smith kernels on bar-complex differentials.

Run with ``python benchmarks/bench_snf.py``.  ``--large`` adds the order-8
degree-2 differentials (about half a minute each in pure Python).
"""

import argparse
import time

from upic import _kernel
from upic.cohomology import _total_int64
from upic.complexes import concentrated
from upic.gmodules import regular_module, norm_one_lattice
from upic.groups import Subgroup, make_cyclic, make_dihedral, make_klein, make_quaternion


def cases(large=False):
    for G in (make_klein(), make_cyclic(6), make_dihedral(4), make_quaternion()):
        for label, M in (("regular", regular_module(G)), ("norm-one", norm_one_lattice(Subgroup(G, (0,))))):
            for n in (1, 2):
                if n == 2 and G.order == 8 and not large:
                    continue
                yield f"{G.name} {label} D^{n}", _total_int64(G, concentrated(M), n)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--large", action="store_true")
    args = parser.parse_args()
    if _kernel.BACKEND != "cython":
        raise SystemExit("compiled kernel not built; run pip install -e . first")
    print(f"{'case':28s} {'shape':>10s} {'cython':>9s} {'python':>9s} {'speedup':>8s}")
    for name, D in cases(args.large):
        obj = D.astype(object)
        tc, rc = best_of(lambda: _kernel.smith_native(D, True, False, backend="cython"), args.repeat)
        tp, rp = best_of(lambda: _kernel.smith_native(obj, True, False, backend="python"), args.repeat)
        assert rc[0] == rp[0], name
        shape = f"{D.shape[0]}x{D.shape[1]}"
        print(f"{name:28s} {shape:>10s} {tc * 1e3:8.1f}ms {tp * 1e3:8.1f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
