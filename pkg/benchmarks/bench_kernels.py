"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case runs once per backend to warm up (numba compiles on first call),
then reports the best of ``--repeat`` timings.  Results must match exactly.
"""
import argparse
import time
from math import gcd

import numpy as np

from exzero import _kernels as kern
from exzero.characters import DirichletChar
from exzero.reciprocity import trace_sum_exact


def _best(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def cases():
    rng = np.random.default_rng(0)
    M = 2058
    a = rng.integers(-50, 50, M).tolist()
    b = rng.integers(-50, 50, M).tolist()
    chi = DirichletChar.from_label("7:[3]")
    units = [u for u in range(1, M) if gcd(u, M) == 1]
    mults = [units[i] for i in rng.integers(0, len(units), 2000)]
    shifts = rng.integers(0, 3 * M, 2000).tolist()
    weights = [1] * 2000
    return [
        ("reduce mod Phi_2058", lambda: kern.reduce_mod_cyclotomic(a, M)),
        ("cyclic convolve, M=2058", lambda: kern.cyclic_convolve(a, b, M)),
        ("galois permute, M=2058", lambda: kern.galois_permute(a, 5, M)),
        ("twisted accumulate, 2000 terms", lambda: kern.twisted_accumulate(a, mults, shifts, weights, M, 3 * M)),
        ("trace sum (7, 11, r=2)", lambda: trace_sum_exact(chi, 11, 2)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if kern.HAVE_NUMBA else [])
    print(f"{'case':34s}" + "".join(f"{b:>12s}" for b in backends) + "   match")
    for name, fn in cases():
        row, outs = [], []
        for b in backends:
            with kern.use_backend(b):
                t, out = _best(fn, args.repeat)
            row.append(t)
            outs.append(out)
        match = all(o == outs[0] for o in outs)
        print(f"{name:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in row) + f"   {match}")


if __name__ == "__main__":
    main()
