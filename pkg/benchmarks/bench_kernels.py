#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each hot kernel on identical inputs through both backends, checks
the outputs agree bit for bit, and prints a timing table. Usage:

    python benchmarks/bench_kernels.py [--length 10000000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from bfree.families import parse_family, primes_upto
from bfree.kernels import _numpy as np_impl

try:
    from bfree.kernels import _numba as nb_impl
except ImportError:
    nb_impl = None


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_mark_multiples(impl, length, moduli):
    bits = np.ones(length, dtype=np.uint8)
    impl.mark_multiples(bits, 1, moduli)
    return bits


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=10**7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if nb_impl is None:
        raise SystemExit("numba backend unavailable; nothing to compare")

    psq = parse_family(f"prime_squares:{args.length}").expand().values_array()
    many = primes_upto(min(args.length, 10**6))
    word = bench_mark_multiples(np_impl, args.length, psq)

    workloads = [
        ("sieve, few moduli", bench_mark_multiples, (args.length, psq)),
        ("sieve, many moduli", bench_mark_multiples, (min(args.length, 10**6), many)),
        ("block counts n=8", lambda impl, w: impl.block_code_counts(w, 8), (word,)),
        ("max zero run", lambda impl, w: impl.max_zero_run(w), (word,)),
    ]

    # warm up jit compilation outside the timed region
    for _, fn, extra in workloads:
        fn(nb_impl, *extra)

    print(f"{'kernel':<22}{'numpy':>10}{'numba':>10}{'speedup':>9}")
    for name, fn, extra in workloads:
        a = fn(np_impl, *extra)
        b = fn(nb_impl, *extra)
        if isinstance(a, np.ndarray):
            assert np.array_equal(a, b), f"backend mismatch in {name}"
        else:
            assert a == b, f"backend mismatch in {name}"
        t_np = best_of(args.repeat, fn, np_impl, *extra)
        t_nb = best_of(args.repeat, fn, nb_impl, *extra)
        print(f"{name:<22}{t_np:>9.3f}s{t_nb:>9.3f}s{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
