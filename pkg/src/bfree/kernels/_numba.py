"""Numba-compiled kernels, signature-compatible with the numpy module."""

import numpy as np
from numba import njit


@njit(cache=True)
def _mark_multiples(bits, start, moduli):
    n = bits.size
    for j in range(moduli.size):
        b = moduli[j]
        off = (-start) % b
        if off < 0:
            off += b
        for i in range(off, n, b):
            bits[i] = 0


def mark_multiples(bits: np.ndarray, start: int, moduli: np.ndarray) -> None:
    _mark_multiples(bits, np.int64(start), moduli)


@njit(cache=True)
def _block_code_counts(bits, n):
    m = bits.size - n + 1
    counts = np.zeros(1 << n, dtype=np.int64)
    mask = (1 << n) - 1
    code = 0
    for i in range(n - 1):
        code = (code << 1) | bits[i]
    for k in range(m):
        code = ((code << 1) | bits[k + n - 1]) & mask
        counts[code] += 1
    return counts


def block_code_counts(bits: np.ndarray, n: int) -> np.ndarray:
    return _block_code_counts(bits, np.int64(n))


@njit(cache=True)
def _max_zero_run(bits):
    best = 0
    run = 0
    for i in range(bits.size):
        if bits[i] == 0:
            run += 1
            if run > best:
                best = run
        else:
            run = 0
    return best


def max_zero_run(bits: np.ndarray) -> int:
    return int(_max_zero_run(bits))
