"""Finite-quotient window model: exact Haar measures and coding words.

For a finite set of moduli the natural compact group collapses to
Z/lcm, where every cylinder fixing all coordinates has Haar measure
1/lcm (a Chinese-remainder fact) and the window is the set of residues
avoiding 0 modulo every modulus. Infinite families are only ever
handled through such finite truncations, which is lossless for measure
computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .blocks import MAX_BLOCK_LENGTH, Block
from .density import ExactDensity, exact_density
from .errors import PeriodOverflowError, PreconditionError
from .families import BSet
from .sieve import sieve_interval

DEFAULT_ENUM_CAP = 10**6
DEFAULT_LCM_CAP = 10**12


@dataclass(frozen=True)
class FiniteQuotient:
    """The cyclic group Z/lcm(B'), which surjects onto every Z/b."""

    moduli: BSet
    lcm: int


@dataclass(frozen=True)
class WindowSet:
    """Residues h mod lcm with h != 0 mod b for every modulus b."""

    quotient: FiniteQuotient
    count: int
    residues: tuple[int, ...] | None  # None when counted without enumeration

    @property
    def measure(self) -> Fraction:
        return Fraction(self.count, self.quotient.lcm)


def _lcm_of(b: BSet, cap: int) -> int:
    l = b.lcm_capped(cap)
    if l is None:
        raise PeriodOverflowError(f"lcm of moduli exceeds cap {cap}")
    return l


def cylinder_measure(bprime: BSet, *, lcm_cap: int = DEFAULT_LCM_CAP) -> ExactDensity:
    """Haar measure 1/lcm of a cylinder fixing all coordinates of B'."""
    l = _lcm_of(bprime, lcm_cap)
    return ExactDensity(Fraction(1, l), l)


def window_set(
    bprime: BSet, *, enumerate_cap: int = DEFAULT_ENUM_CAP, lcm_cap: int = DEFAULT_LCM_CAP
) -> WindowSet:
    """The window as an explicit residue set when lcm is small, else by
    inclusion-exclusion counting only."""
    l = _lcm_of(bprime, lcm_cap)
    quotient = FiniteQuotient(bprime, l)
    if l <= enumerate_cap:
        bits = sieve_interval(bprime, 0, l).bits
        residues = tuple(int(h) for h in np.flatnonzero(bits))
        return WindowSet(quotient, len(residues), residues)
    dens = exact_density(bprime, lcm_cap=lcm_cap)
    count = l - (l * dens.value.numerator) // dens.value.denominator
    return WindowSet(quotient, int(count), None)


def window_measure(bprime: BSet, **kwargs) -> ExactDensity:
    """Exact Haar measure of the window; equals 1 - d(M_B') identically."""
    w = window_set(bprime, **kwargs)
    return ExactDensity(w.measure, w.quotient.lcm)


def coding_word(bprime: BSet, h: int, start: int, length: int) -> Block:
    """Word w with w(i) = 1 iff h + start + i != 0 mod b for all b in B'.

    The translate by h makes this the indicator word seen from residue
    h, so it reduces to sieving the shifted interval. Periodic with
    period dividing lcm(B').
    """
    l = bprime.lcm()
    if not 0 <= h < l:
        raise PreconditionError(f"residue h must satisfy 0 <= h < lcm = {l}, got {h}")
    if length < 0:
        raise PreconditionError("length must be >= 0")
    return Block.from_bits(sieve_interval(bprime, h + start, length).bits)


@dataclass(frozen=True)
class PhiBlocks:
    """Length-n blocks of the coding words over residues of the quotient."""

    quotient: FiniteQuotient
    n: int
    blocks: frozenset[Block]
    exhaustive: bool
    residues_used: int


def phi_blocks(bprime: BSet, n: int, *, residue_budget: int = 1 << 20) -> PhiBlocks:
    """All length-n subwords of coding words over all residues.

    The window of the word at residue h starting at offset t equals the
    window of the word at residue h+t starting at 0, so the exhaustive
    set is exactly the set of cyclic length-n windows of one full
    period. When lcm exceeds the budget, residues 0..budget-1 are
    scanned instead and the result is flagged partial.
    """
    if not 1 <= n <= MAX_BLOCK_LENGTH:
        raise PreconditionError(f"block length must be in 1..{MAX_BLOCK_LENGTH}")
    l = bprime.lcm()
    quotient = FiniteQuotient(bprime, l)
    if l <= residue_budget:
        bits = sieve_interval(bprime, 0, l).bits
        reps = -(-(l + n - 1) // l)
        ext = np.tile(bits, reps)[: l + n - 1]
        counts = kernels.block_code_counts(ext, n)
        blocks = frozenset(Block(n, int(c)) for c in np.flatnonzero(counts))
        return PhiBlocks(quotient, n, blocks, True, l)
    bits = sieve_interval(bprime, 0, residue_budget + n - 1).bits
    counts = kernels.block_code_counts(bits, n)
    blocks = frozenset(Block(n, int(c)) for c in np.flatnonzero(counts))
    return PhiBlocks(quotient, n, blocks, False, residue_budget)


def window_report(
    bprime: BSet, *, enumerate_cap: int = DEFAULT_ENUM_CAP, lcm_cap: int = DEFAULT_LCM_CAP
) -> dict:
    """JSON-ready summary: residue count, measure and the density identity."""
    w = window_set(bprime, enumerate_cap=enumerate_cap, lcm_cap=lcm_cap)
    dens = exact_density(bprime, lcm_cap=lcm_cap)
    measure = w.measure
    return {
        "moduli": list(bprime.values),
        "lcm": w.quotient.lcm,
        "window_count": w.count,
        "window_measure": f"{measure.numerator}/{measure.denominator}",
        "density_check": measure == 1 - dens.value,
    }
