"""Segmented sieving of multiples and B-free indicators over Z-intervals.

The indicator word eta assigns 1 to integers divisible by no modulus.
All interval arithmetic uses floor division so negative ranges behave
exactly like positive ones (the set of multiples is symmetric).
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass

import numpy as np

from . import kernels
from .families import BSet

DEFAULT_SEGMENT_LENGTH = 1 << 20


@dataclass(frozen=True, eq=False)
class EtaSegment:
    """B-free indicator word on [start, start + len(bits)).

    bits[i] == 1 iff start + i is divisible by no modulus of the
    generating set.
    """

    start: int
    bits: np.ndarray  # uint8, values 0/1

    @property
    def length(self) -> int:
        return int(self.bits.size)

    @property
    def end(self) -> int:
        return self.start + self.length

    def ones(self) -> int:
        return int(np.count_nonzero(self.bits))

    def to01(self) -> str:
        return "".join("1" if v else "0" for v in self.bits)

    def same_word(self, other: "EtaSegment") -> bool:
        return self.start == other.start and np.array_equal(self.bits, other.bits)


def _relevant_moduli(b: BSet, start: int, length: int) -> np.ndarray:
    hi = start + length - 1
    vals = b.values_array()
    cap = max(abs(start), abs(hi))
    return vals[vals <= cap] if cap else vals[:0]


def _sealed(start: int, bits: np.ndarray) -> EtaSegment:
    # segments are shared values; freeze the buffer after construction
    bits.flags.writeable = False
    return EtaSegment(start, bits)


def sieve_interval(
    b: BSet, start: int, length: int, segment_length: int = DEFAULT_SEGMENT_LENGTH
) -> EtaSegment:
    """B-free indicator on [start, start+length), marked per modulus in
    O(length/modulus + 1)."""
    if length < 0:
        raise ValueError("length must be >= 0")
    bits = np.ones(length, dtype=np.uint8)
    if length == 0 or len(b) == 0:
        return _sealed(start, bits)
    if 1 in b:
        bits[:] = 0
        return _sealed(start, bits)
    moduli = _relevant_moduli(b, start, length)
    for lo in range(0, length, segment_length):
        hi = min(lo + segment_length, length)
        kernels.mark_multiples(bits[lo:hi], start + lo, moduli)
    if start <= 0 < start + length:
        bits[-start] = 0  # zero is a multiple of every modulus
    return _sealed(start, bits)


def stream_segments(
    b: BSet, start: int, length: int, segment_length: int = DEFAULT_SEGMENT_LENGTH
):
    """Yield the interval as consecutive EtaSegments of bounded size."""
    pos = start
    remaining = length
    while remaining > 0:
        step = min(segment_length, remaining)
        yield sieve_interval(b, pos, step, segment_length)
        pos += step
        remaining -= step


def count_multiples(
    b: BSet, start: int, length: int, segment_length: int = DEFAULT_SEGMENT_LENGTH
) -> int:
    """|M_B intersect [start, start+length)| without materializing the word."""
    if length < 0:
        raise ValueError("length must be >= 0")
    free = 0
    for seg in stream_segments(b, start, length, segment_length):
        free += seg.ones()
    return length - free


_HEADER = struct.Struct("<qQ")  # start: signed 64-bit LE, length: unsigned 64-bit LE


def dump_segment(seg: EtaSegment, fp: io.BufferedIOBase) -> None:
    """Write a segment as a 16-byte header plus little-bit-order packed bits."""
    fp.write(_HEADER.pack(seg.start, seg.length))
    fp.write(np.packbits(seg.bits, bitorder="little").tobytes())


def load_segment(fp: io.BufferedIOBase) -> EtaSegment:
    start, length = _HEADER.unpack(fp.read(_HEADER.size))
    packed = np.frombuffer(fp.read((length + 7) // 8), dtype=np.uint8)
    bits = np.unpackbits(packed, count=length, bitorder="little") if length else np.empty(0, np.uint8)
    return _sealed(start, bits.astype(np.uint8))
