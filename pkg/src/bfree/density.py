"""Exact and estimated densities of sets of multiples.

Exact values are rationals counted over one period (or equivalently by
inclusion-exclusion over subsets); estimates are finite-window proxies
whose conventions are spelled out below, because liminf and limsup are
not finitely decidable:

* natural bounds: partial averages over [1, m] at dyadic checkpoints m,
  with the liminf/limsup proxies taken over the checkpoints in the top
  half of the run;
* logarithmic estimate: harmonically weighted average over the window
  (sqrt(n), n], which has the same limit as the full average but sheds
  the initial-segment transient that dominates at desk-scale n;
* recent-window estimate: plain average over (n/2, n], the proxy used
  by the dichotomy profiles (the logarithmic density of a set of
  multiples equals its lower natural density, so a late natural window
  is the faster-converging probe of the same limit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .errors import NotCoprimeError, PeriodOverflowError, PreconditionError
from .families import BSet, FamilySpec, bset
from .sieve import DEFAULT_SEGMENT_LENGTH, count_multiples, sieve_interval, stream_segments

DEFAULT_LCM_CAP = 10**9
DEFAULT_SUBSET_BUDGET = 1 << 22
_SIEVE_AUTO_CAP = 10**8
_PROGRESSION_CAP = 10**8


@dataclass(frozen=True)
class ExactDensity:
    """An exact rational density together with the period it was counted over."""

    value: Fraction
    period: int

    def __float__(self) -> float:
        return float(self.value)

    def as_dict(self) -> dict:
        return {"value": f"{self.value.numerator}/{self.value.denominator}", "period": self.period}


@dataclass(frozen=True)
class DensityBounds:
    """Certified rational interval produced when subset pruning fires."""

    lower: Fraction
    upper: Fraction
    pruned_branches: int

    def as_dict(self) -> dict:
        return {
            "lower": f"{self.lower.numerator}/{self.lower.denominator}",
            "upper": f"{self.upper.numerator}/{self.upper.denominator}",
            "pruned_branches": self.pruned_branches,
        }


@dataclass(frozen=True)
class DensityEstimate:
    """A finite-window density estimate; never returned without its window n."""

    value: float
    kind: str  # "natural-lower" | "natural-upper" | "logarithmic"
    n: int
    trace: tuple[tuple[int, float], ...] = ()

    def as_dict(self) -> dict:
        return {"value": self.value, "kind": self.kind, "n": self.n}


def _subset_count(values: Sequence[int], period: int, budget: int) -> int:
    """|M_B intersect [1, period]| by inclusion-exclusion over subsets."""
    vals = sorted(values)
    k = len(vals)
    count = 0
    visited = 0

    def rec(i: int, l: int, size: int) -> None:
        nonlocal count, visited
        for j in range(i, k):
            g = l * vals[j] // math.gcd(l, vals[j])
            visited += 1
            if visited > budget:
                raise PeriodOverflowError(f"subset enumeration exceeded budget {budget}")
            if size % 2 == 0:
                count += period // g
            else:
                count -= period // g
            rec(j + 1, g, size + 1)

    rec(0, 1, 0)
    return count


def _subset_bounds(values: Sequence[int], cap: int, budget: int):
    """Inclusion-exclusion with branches pruned at lcm > cap.

    A pruned branch rooted at a subset S of size s contributes, summed
    with all its supersets, a value of sign (-1)^(s+1) and magnitude at
    most 1/lcm(S); the slacks below account for that envelope.
    """
    vals = sorted(values)
    k = len(vals)
    total = Fraction(0)
    up = Fraction(0)
    down = Fraction(0)
    visited = 0
    pruned = 0

    def rec(i: int, l: int, size: int) -> None:
        nonlocal total, up, down, visited, pruned
        for j in range(i, k):
            g = l * vals[j] // math.gcd(l, vals[j])
            visited += 1
            if visited > budget:
                raise PeriodOverflowError(f"subset enumeration exceeded budget {budget}")
            if g > cap:
                pruned += 1
                if size % 2 == 0:
                    up += Fraction(1, g)
                else:
                    down += Fraction(1, g)
                continue
            if size % 2 == 0:
                total += Fraction(1, g)
            else:
                total -= Fraction(1, g)
            rec(j + 1, g, size + 1)

    rec(0, 1, 0)
    return total, down, up, pruned


def exact_density_or_bounds(
    b: BSet,
    *,
    method: str = "auto",
    lcm_cap: int = DEFAULT_LCM_CAP,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
    segment_length: int = DEFAULT_SEGMENT_LENGTH,
) -> ExactDensity | DensityBounds:
    """d(M_B) for finite B: exact when the period fits, else a certified interval.

    method "subset" forces inclusion-exclusion, "sieve" forces one-period
    counting, "auto" picks by size. Both exact routes agree exactly.
    """
    if len(b) == 0:
        return ExactDensity(Fraction(0), 1)
    if 1 in b:
        return ExactDensity(Fraction(1), 1)
    values = b.values
    period = b.lcm_capped(lcm_cap)
    if method not in ("auto", "subset", "sieve"):
        raise PreconditionError(f"unknown method {method!r}")
    if period is None:
        if method == "sieve":
            raise PeriodOverflowError(f"lcm exceeds cap {lcm_cap}; period sieve impossible")
        total, down, up, pruned = _subset_bounds(values, lcm_cap, subset_budget)
        return DensityBounds(max(Fraction(0), total - down), min(Fraction(1), total + up), pruned)
    if method == "sieve" or (method == "auto" and len(values) > 22 and period <= _SIEVE_AUTO_CAP):
        count = count_multiples(b, 1, period, segment_length)
        return ExactDensity(Fraction(count, period), period)
    count = _subset_count(values, period, subset_budget)
    return ExactDensity(Fraction(count, period), period)


def exact_density(b: BSet, **kwargs) -> ExactDensity:
    """Exact d(M_B); raises PeriodOverflowError when only bounds are feasible."""
    res = exact_density_or_bounds(b, **kwargs)
    if isinstance(res, DensityBounds):
        raise PeriodOverflowError(
            f"lcm exceeds cap; certified interval [{res.lower}, {res.upper}] "
            "available via exact_density_or_bounds"
        )
    return res


def exact_progression_free_density(
    c: BSet,
    beta: int,
    r: int,
    shifts: Sequence[int],
    *,
    lcm_cap: int = _PROGRESSION_CAP,
) -> ExactDensity:
    """Exact density of {k : k = r mod beta, k+i is C-free for each shift i}.

    Counted over one period L = lcm(beta, lcm(C)). C is primitivized on
    entry, which changes neither the set of multiples nor the density.
    """
    if beta < 1:
        raise PreconditionError(f"beta must be >= 1, got {beta}")
    lc = c.lcm_capped(lcm_cap)
    if lc is None:
        raise PeriodOverflowError(f"lcm(C) exceeds cap {lcm_cap}")
    period = beta * lc // math.gcd(beta, lc)
    if period > lcm_cap:
        raise PeriodOverflowError(f"period lcm(beta, lcm(C)) = {period} exceeds cap {lcm_cap}")
    lo = min(0, min(shifts, default=0))
    hi = period + max(0, max(shifts, default=0))
    word = sieve_interval(c, lo, hi - lo)
    ks = np.arange(r % beta, period, beta, dtype=np.int64)
    ok = np.ones(ks.size, dtype=bool)
    for i in shifts:
        ok &= word.bits[ks + (i - lo)] == 1
    return ExactDensity(Fraction(int(np.count_nonzero(ok)), period), period)


def _checkpoints(n: int) -> list[int]:
    pts = {n}
    m = n
    while m > 1:
        m //= 2
        pts.add(m)
    return sorted(pts)


def natural_density_bounds(
    b: BSet, n: int, *, segment_length: int = DEFAULT_SEGMENT_LENGTH
) -> tuple[DensityEstimate, DensityEstimate]:
    """Running liminf/limsup proxies for the natural density of M_B.

    Partial averages over [1, m] are recorded at the dyadic checkpoint
    grid m = n, n/2, n/4, ...; the proxies are the min and max over the
    checkpoints in [n/2, n]. The trace carries the full grid.
    """
    if n < 1:
        raise PreconditionError("window n must be >= 1")
    cps = _checkpoints(n)
    trace: list[tuple[int, float]] = []
    free_cum = 0
    it = iter(cps)
    next_cp = next(it)
    for seg in stream_segments(b, 1, n, segment_length):
        while next_cp is not None and next_cp < seg.end:
            prefix_free = free_cum + int(np.count_nonzero(seg.bits[: next_cp - seg.start + 1]))
            trace.append((next_cp, (next_cp - prefix_free) / next_cp))
            next_cp = next(it, None)
        free_cum += seg.ones()
    half = [v for m, v in trace if m >= n // 2]
    tr = tuple(trace)
    return (
        DensityEstimate(min(half), "natural-lower", n, tr),
        DensityEstimate(max(half), "natural-upper", n, tr),
    )


def log_density_estimate(
    b: BSet, n: int, *, segment_length: int = DEFAULT_SEGMENT_LENGTH
) -> DensityEstimate:
    """Normalized harmonic average of the multiples indicator over (sqrt(n), n].

    The value is sum(1/k over multiples) / sum(1/k), both restricted to
    the window; segment sums are combined with compensated summation and
    the result is deterministic for fixed n.
    """
    if n < 2:
        raise PreconditionError("window n must be >= 2")
    m0 = math.isqrt(n)
    mult_parts: list[float] = []
    all_parts: list[float] = []
    for seg in stream_segments(b, m0 + 1, n - m0, segment_length):
        weights = 1.0 / np.arange(seg.start, seg.end, dtype=np.float64)
        mult_parts.append(float(weights[seg.bits == 0].sum()))
        all_parts.append(float(weights.sum()))
    value = math.fsum(mult_parts) / math.fsum(all_parts)
    return DensityEstimate(value, "logarithmic", n, ((n, value),))


def recent_window_estimate(
    b: BSet, n: int, *, segment_length: int = DEFAULT_SEGMENT_LENGTH
) -> DensityEstimate:
    """Average of the multiples indicator over the most recent window (n/2, n]."""
    if n < 2:
        raise PreconditionError("window n must be >= 2")
    half = n // 2
    cnt = count_multiples(b, half + 1, n - half, segment_length)
    value = cnt / (n - half)
    return DensityEstimate(value, "natural-lower", n, ((n, value),))


def davenport_erdos_sequence(family: FamilySpec, ks: Sequence[int], **kwargs) -> list[ExactDensity]:
    """Exact d(M_{B truncated at K}) for each K; non-decreasing in K."""
    if list(ks) != sorted(set(ks)):
        raise PreconditionError("truncation points must be strictly increasing")
    full = family.expand(max(ks))
    return [exact_density(full.restrict_to(k), **kwargs) for k in ks]


def _tail_above(b: BSet, k: int) -> BSet:
    kept = tuple(m for m in b.elements if m.value > k)
    return BSet(kept, f"{b.provenance} | > {k}")


def light_tails_profile(
    family: FamilySpec, ks: Sequence[int], n: int, *, segment_length: int = DEFAULT_SEGMENT_LENGTH
) -> list[DensityEstimate]:
    """Upper natural estimates of the tail families {b in B : b > K}."""
    full = family.expand()
    out = []
    for k in ks:
        _, upper = natural_density_bounds(_tail_above(full, k), n, segment_length=segment_length)
        out.append(upper)
    return out


def coprime_product_check(a: BSet, c: BSet, **kwargs) -> tuple[ExactDensity, ExactDensity, ExactDensity]:
    """(d(M_A intersect M_C), d(M_A), d(M_C)) for coprime A, C, all exact.

    The intersection is the set of multiples of the pairwise products,
    so the first value must equal the product of the other two.
    """
    for ma, mc in product(a.elements, c.elements):
        if math.gcd(ma.value, mc.value) != 1:
            raise NotCoprimeError(ma.value, mc.value)
    inter = bset((ma.value * mc.value for ma, mc in product(a.elements, c.elements)))
    return (exact_density(inter, **kwargs), exact_density(a, **kwargs), exact_density(c, **kwargs))
