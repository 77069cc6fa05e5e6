"""Compare the compiled kernels with the pure-Python fallback.

Both backends run the same end-to-end operations on the same seeded
instances; results must agree and the table reports median wall time.

    python3 benchmarks/bench_kernels.py --n 120 200 --repeat 5
"""

from __future__ import annotations

import argparse
import statistics
import time
from contextlib import contextmanager

from hampreserve import _kernels_py, kernels
from hampreserve.connectivity import kappa
from hampreserve.hamilton import ham_cycle_dirac
from hampreserve.instances import gen_barbell_dirac, gen_dirac

NAMES = ("closure_fill", "unwind_cycle", "augment_flow")


def _compiled():
    try:
        from hampreserve import _kernels
    except ImportError:
        return None
    return _kernels


@contextmanager
def backend(mod):
    saved = {name: getattr(kernels, name) for name in NAMES}
    for name in NAMES:
        setattr(kernels, name, getattr(mod, name))
    try:
        yield
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)


def _median_time(fn, repeat: int):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[60, 120, 200])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    compiled = _compiled()
    if compiled is None:
        print("compiled extension not built; nothing to compare")
        return 1
    print(f"{'task':<14}{'n':>5}{'compiled s':>13}{'python s':>12}{'speedup':>10}")
    for n in args.n:
        dirac = gen_dirac(n, args.seed)
        barbell = gen_barbell_dirac(n - n % 2, 3, args.seed)
        tasks = {
            "closure+cycle": lambda: ham_cycle_dirac(dirac),
            "kappa": lambda: kappa(barbell),
        }
        for label, fn in tasks.items():
            with backend(compiled):
                tc, rc = _median_time(fn, args.repeat)
            with backend(_kernels_py):
                tp, rp = _median_time(fn, args.repeat)
            if rc != rp:
                print(f"MISMATCH in {label} at n={n}")
                return 1
            print(f"{label:<14}{n:>5}{tc:>13.4f}{tp:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
