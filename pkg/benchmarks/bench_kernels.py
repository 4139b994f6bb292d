"""Compare the numba and numpy kernel backends on the hot loops.

Times each kernel over a realistic window (default 2^20 integers near
10^8, the shape the segmented sums actually run) with a warmup pass and
best-of-N timing.  Also times one end-to-end checkpointed sum per
backend by re-running the interpreter with TITCHMARSH_NO_NUMBA set.

Usage: python3 benchmarks/bench_kernels.py [--width WIDTH] [--repeat N]
"""

import argparse
import math
import os
import subprocess
import sys
import time

import numpy as np

from titchmarsh import _kernels
from titchmarsh.sieve import primes_up_to


def best_of(fn, repeat):
    fn()  # warmup: first numba call may compile
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(width, repeat):
    lo = 10**8
    hi = lo + width
    base = primes_up_to(math.isqrt(hi - 1) + 1).primes
    cases = [
        ("primality", lambda impl: impl.primality(lo, hi, base)),
        ("divisor", lambda impl: impl.divisor(lo, hi, base)),
        ("kfree k=2", lambda impl: impl.kfree(lo, hi, base, 2)),
        ("omega", lambda impl: impl.omega(lo, hi, base)),
        ("mu", lambda impl: impl.mu(lo, hi, base)),
        ("pillai", lambda impl: impl.pillai(lo, hi, base)),
        ("factor_counts", lambda impl: impl.factor_counts(lo, hi, base)),
    ]
    names = sorted(_kernels.IMPLS)
    print(f"window [{lo}, {hi}), {width} integers, best of {repeat}")
    header = f"{'kernel':<14}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, call in cases:
        times = {}
        for n in names:
            impl = _kernels.IMPLS[n]
            times[n] = best_of(lambda: call(impl), repeat)
        row = f"{label:<14}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) == 2:
            a, b = (times[n] for n in names)
            row += f"{(b / a if a else math.inf):>9.1f}x"
        print(row)


def bench_end_to_end():
    code = ("from titchmarsh.sums import shifted_prime_sum;"
            "from titchmarsh.functions import DIVISOR;"
            "import time,titchmarsh;"
            "t0=time.perf_counter();"
            "r=shifted_prime_sum(DIVISOR,1,10**7)[-1];"
            "print(titchmarsh.BACKEND, r.sum, f'{time.perf_counter()-t0:.2f}s')")
    print("\nend-to-end sum of d(p-1) to 10^7:")
    for env_flag in ("0", "1"):
        env = dict(os.environ, TITCHMARSH_NO_NUMBA=env_flag)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        print(" ", out.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--width", type=int, default=1 << 20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    bench_kernels(args.width, args.repeat)
    if not args.skip_end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
