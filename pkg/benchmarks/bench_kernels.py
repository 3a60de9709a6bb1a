"""Compare the compiled kernels with the pure-Python fallback.

Run ``python3 benchmarks/bench_kernels.py``.  Both backends are timed on the
same inputs and their outputs are compared before any timing is reported.
"""
import argparse
import time

import numpy as np

from sublogic import _pykernels
from sublogic.boolfun import AND, NOT, XOR
from sublogic.generators import gen_random
from sublogic.solvers.typeelim import TypeSystem

try:
    from sublogic import _speedups
except ImportError:
    _speedups = None


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def closure_cases():
    # (label, n, [(arity, mask)], init masks)
    proj = lambda n: [sum(1 << i for i in range(1 << n) if (i >> (n - 1 - j)) & 1)  # noqa
                      for j in range(n)]
    for n in (2, 3):
        yield f"and/not n={n}", n, [(2, AND.table.mask), (1, NOT.table.mask)], proj(n)
        yield f"xor n={n}", n, [(2, XOR.table.mask)], proj(n)


def eliminate_cases(count):
    for seed in range(count):
        inst = gen_random("ocsat/both/BF", seed, atoms=5, axioms=7, depth=3)
        yield seed, TypeSystem(inst)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--instances", type=int, default=20)
    args = ap.parse_args(argv)
    if _speedups is None:
        print("compiled kernels are not built; only the Python fallback is available")
        return 1
    print(f"{'kernel':<28}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for label, n, ops, init in closure_cases():
        tp, rp = _best(lambda: _pykernels.closure_fixpoint(n, ops, init), args.repeat)
        tc, rc = _best(lambda: _speedups.closure_fixpoint(n, ops, init), args.repeat)
        assert sorted(rp[0]) == sorted(rc[0]), label
        print(f"{'closure ' + label:<28}{tp * 1e3:>12.2f}{tc * 1e3:>12.2f}{tp / tc:>10.1f}")
    tp_all = tc_all = 0.0
    types = 0
    for seed, ts in eliminate_cases(args.instances):
        demands = (*ts.demands, ts.ones.shape[1])
        tp, (ap_, _) = _best(lambda: _pykernels.eliminate(ts.types, ts.ones, ts.zeros,
                                                          *demands), args.repeat)
        tc, (ac, _) = _best(lambda: _speedups.eliminate(ts.types, ts.ones, ts.zeros,
                                                        *demands), args.repeat)
        assert np.array_equal(np.asarray(ap_, dtype=bool), np.asarray(ac, dtype=bool)), seed
        tp_all += tp
        tc_all += tc
        types += len(ts.types)
    label = f"eliminate x{args.instances} ({types} types)"
    print(f"{label:<28}{tp_all * 1e3:>12.2f}{tc_all * 1e3:>12.2f}{tp_all / tc_all:>10.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
