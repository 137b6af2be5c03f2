"""Pure-numpy implementations of the hot kernels.

These are the reference implementations; the numba module mirrors the
same signatures and must produce bit-identical results.
"""

import numpy as np


def mark_multiples(bits: np.ndarray, start: int, moduli: np.ndarray) -> None:
    """Zero out bits[i] whenever start+i is a multiple of some modulus.

    `bits` is a uint8 0/1 array covering [start, start+len). Works for
    negative `start` because Python's % is a floor mod.
    """
    n = bits.size
    for b in moduli:
        b = int(b)
        off = (-start) % b
        if off < n:
            bits[off::b] = 0


def block_code_counts(bits: np.ndarray, n: int) -> np.ndarray:
    """Count every length-n window of `bits`, encoded MSB-first as an integer.

    Returns an int64 array of length 2**n; entry c is the number of
    window positions whose word reads as c in binary.
    """
    m = bits.size - n + 1
    codes = np.zeros(m, dtype=np.int64)
    for i in range(n):
        np.left_shift(codes, 1, out=codes)
        codes |= bits[i : i + m]
    return np.bincount(codes, minlength=1 << n).astype(np.int64)


def max_zero_run(bits: np.ndarray) -> int:
    """Length of the longest run of zeros in a 0/1 array."""
    ones = np.flatnonzero(bits)
    if ones.size == 0:
        return int(bits.size)
    interior = int((np.diff(ones) - 1).max()) if ones.size > 1 else 0
    head = int(ones[0])
    tail = int(bits.size - 1 - ones[-1])
    return max(interior, head, tail)
