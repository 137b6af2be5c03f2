"""Block-level statistics of B-free indicator words.

Blocks are stored as integer encodings (the word read as binary,
MSB-first, tagged with its length) so block sets sort and compare
deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import PreconditionError
from .families import BSet, FamilySpec
from .sieve import EtaSegment, sieve_interval

MAX_BLOCK_LENGTH = 24  # counting tables are 2**n entries


@dataclass(frozen=True, order=True)
class Block:
    """A finite 0/1 word, encoded MSB-first as (length, code)."""

    length: int
    code: int

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Block":
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
        n = int(arr.size)
        if n == 0:
            return cls(0, 0)
        packed = np.packbits(arr, bitorder="big")
        code = int.from_bytes(packed.tobytes(), "big") >> ((-n) % 8)
        return cls(n, code)

    @classmethod
    def from01(cls, word: str) -> "Block":
        if word and set(word) - {"0", "1"}:
            raise PreconditionError(f"not a 0/1 word: {word!r}")
        return cls(len(word), int(word, 2) if word else 0)

    def to01(self) -> str:
        return format(self.code, f"0{self.length}b") if self.length else ""

    def bit(self, i: int) -> int:
        return (self.code >> (self.length - 1 - i)) & 1

    def ones(self) -> int:
        return self.code.bit_count()

    def dominated_words(self) -> Iterable["Block"]:
        """All words y <= self coordinatewise, excluding self."""
        sub = self.code
        while sub:
            sub = (sub - 1) & self.code
            yield Block(self.length, sub)


@dataclass(frozen=True)
class BlockStats:
    """Exact occurrence count of a block over a window of the word."""

    block: Block
    count: int
    window_length: int

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.count, self.window_length)


def _check_block_length(n: int, limit: int) -> None:
    if n < 1:
        raise PreconditionError("block length must be >= 1")
    if n > MAX_BLOCK_LENGTH:
        raise PreconditionError(f"block length {n} exceeds the counting cap {MAX_BLOCK_LENGTH}")
    if n > limit:
        raise PreconditionError(f"block length {n} exceeds segment length {limit}")


def block_counts_array(segment: EtaSegment, n: int) -> np.ndarray:
    """Counts of every length-n code over all windows of the segment."""
    _check_block_length(n, segment.length)
    return kernels.block_code_counts(segment.bits, n)


def observed_blocks(segment: EtaSegment, n: int) -> frozenset[Block]:
    """All distinct length-n subwords of the segment."""
    counts = block_counts_array(segment, n)
    return frozenset(Block(n, int(c)) for c in np.flatnonzero(counts))


def block_frequencies(segment: EtaSegment, n: int) -> list[BlockStats]:
    """Exact counts of every occurring length-n block, sorted by code.

    Frequencies are taken relative to the window length; the counts
    themselves add up to length - n + 1.
    """
    counts = block_counts_array(segment, n)
    return [
        BlockStats(Block(n, int(code)), int(counts[code]), segment.length)
        for code in np.flatnonzero(counts)
    ]


@dataclass(frozen=True)
class SupportRow:
    block: Block
    counts: tuple[int, ...]
    frequencies: tuple[Fraction, ...]
    flagged: bool


@dataclass(frozen=True)
class SupportReport:
    family: str
    n: int
    windows: tuple[int, ...]
    decay_factor: float
    rows: tuple[SupportRow, ...]

    @property
    def flagged_blocks(self) -> list[Block]:
        return [r.block for r in self.rows if r.flagged]


def support_stability(
    b: BSet,
    n: int,
    windows: Sequence[int],
    *,
    decay_factor: float = 4.0,
) -> SupportReport:
    """Frequency stability of every block seen in the smallest window.

    A block is flagged when its frequency decays by more than
    decay_factor per window doubling between consecutive windows, the
    declared finite proxy for a support violation.
    """
    ws = [int(w) for w in windows]
    if ws != sorted(set(ws)):
        raise PreconditionError("windows must be strictly increasing")
    word = sieve_interval(b, 1, ws[-1])
    per_window = [block_counts_array(EtaSegment(1, word.bits[:w]), n) for w in ws]
    rows = []
    for code in np.flatnonzero(per_window[0]):
        counts = tuple(int(c[code]) for c in per_window)
        freqs = tuple(Fraction(cnt, w) for cnt, w in zip(counts, ws))
        flagged = False
        for (f0, w0), (f1, w1) in zip(zip(freqs, ws), zip(freqs[1:], ws[1:])):
            allowed = decay_factor ** np.log2(w1 / w0)
            if f1 == 0 or float(f0 / f1) > allowed:
                flagged = True
        rows.append(SupportRow(Block(n, int(code)), counts, freqs, flagged))
    return SupportReport(b.provenance, n, tuple(ws), decay_factor, tuple(rows))


@dataclass(frozen=True)
class HeredityViolation:
    missing: Block
    dominating: Block


def heredity_check(blocks: Iterable[Block]) -> list[HeredityViolation]:
    """Downward closure check: for each block x and each word y <= x,
    report y when it is absent from the set. Empty list = hereditary
    at this block length and window."""
    blist = sorted(set(blocks))
    if not blist:
        return []
    lengths = {blk.length for blk in blist}
    if len(lengths) != 1:
        raise PreconditionError(f"blocks must share one length, got {sorted(lengths)}")
    codes = {blk.code for blk in blist}
    missing: dict[int, int] = {}
    for blk in blist:
        for below in blk.dominated_words():
            if below.code not in codes and below.code not in missing:
                missing[below.code] = blk.code
    n = blist[0].length
    return [
        HeredityViolation(Block(n, code), Block(n, over))
        for code, over in sorted(missing.items())
    ]


def max_zero_run(segment: EtaSegment) -> int:
    """Longest run of zeros; a growing run across windows signals long
    blocks of consecutive multiples (the proximality indicator)."""
    return kernels.max_zero_run(segment.bits)


@dataclass(frozen=True)
class XPhiReport:
    family: str
    truncation: int
    n: int
    range_start: int
    range_length: int
    observed_count: int
    coding_count: int
    contained: bool
    gap: int
    exhaustive: bool

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "truncation": self.truncation,
            "n": self.n,
            "range": [self.range_start, self.range_length],
            "observed_blocks": self.observed_count,
            "coding_blocks": self.coding_count,
            "contained": self.contained,
            "gap": self.gap,
            "exhaustive": self.exhaustive,
        }


def xeta_vs_xphi(
    family: FamilySpec,
    truncation: int,
    n: int,
    range_start: int,
    range_length: int,
    *,
    residue_budget: int = 1 << 20,
) -> XPhiReport:
    """Observed indicator blocks versus all blocks of the coding words
    at the same truncation; containment must hold, and the gap is the
    number of coding blocks not yet observed."""
    from .window import phi_blocks

    trunc = family.expand(truncation)
    observed = observed_blocks(sieve_interval(trunc, range_start, range_length), n)
    phi = phi_blocks(trunc, n, residue_budget=residue_budget)
    contained = observed <= phi.blocks
    return XPhiReport(
        family=family.describe(),
        truncation=truncation,
        n=n,
        range_start=range_start,
        range_length=range_length,
        observed_count=len(observed),
        coding_count=len(phi.blocks),
        contained=contained,
        gap=len(phi.blocks - observed),
        exhaustive=phi.exhaustive,
    )
