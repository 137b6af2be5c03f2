"""Executable diagnostics for Behrend-type dichotomies and tautness.

Classifications are declared finite proxies for limit statements. The
density probe is the recent-window natural average (see density module)
because the logarithmic density of a set of multiples coincides with
its lower natural density, and the late natural window converges far
faster at desk scale.

Classification rule: a profile is behrend-like when every estimate
exceeds 0.9, vanishing when the final estimate sits below 0.1 and the
sequence either started below 0.1 as well or at least halved on the
way, and inconclusive otherwise. Wide margins keep the proxy robust;
the dichotomy guarantees the limit is 0 or 1, never in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Sequence

import numpy as np

from .density import (
    DensityEstimate,
    exact_progression_free_density,
    recent_window_estimate,
)
from .errors import PreconditionError, SearchExhaustedError
from .families import (
    BSet,
    FamilySpec,
    bset,
    prime_factors,
    primes_upto,
    quotient,
    remove_multiples,
    restrict_spectrum,
    spec_outside,
)
from .sieve import sieve_interval

BEHREND_HIGH = 0.9
VANISH_LOW = 0.1
_CUTOFF_CANDIDATES = (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64)
_EXPONENT_GRID_CAP = 4096


@dataclass(frozen=True)
class DichotomyProfile:
    family: str
    ns_grid: tuple[int, ...]
    estimates: tuple[DensityEstimate, ...]
    classification: str  # "behrend-like" | "vanishing" | "inconclusive"

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "Ns": list(self.ns_grid),
            "estimates": [e.as_dict() for e in self.estimates],
            "classification": self.classification,
            "thresholds": {"behrend_like": BEHREND_HIGH, "vanishing": VANISH_LOW},
        }


def _classify(values: Sequence[float]) -> str:
    if all(v > BEHREND_HIGH for v in values):
        return "behrend-like"
    first, final = values[0], values[-1]
    if final < VANISH_LOW and (final == 0.0 or first < VANISH_LOW or first >= 2 * final):
        return "vanishing"
    return "inconclusive"


def _strip_unit(b: BSet) -> BSet:
    """Drop the degenerate modulus 1 from a quotient family.

    1 appears in B/q exactly when q itself is a modulus; that scaled
    copy of {1} is no witness against tautness, so diagnostics work on
    the quotient without it.
    """
    if 1 not in b:
        return b
    kept = tuple(m for m in b.elements if m.value != 1)
    return BSet(kept, f"{b.provenance} | unit dropped")


def profile_moduli(b: BSet, ns_grid: Sequence[int], n: int, label: str = "") -> DichotomyProfile:
    """Dichotomy profile of an already-expanded set of moduli."""
    if list(ns_grid) != sorted(set(ns_grid)):
        raise PreconditionError("profile grid Ns must be strictly increasing")
    estimates = tuple(recent_window_estimate(spec_outside(b, nn), n) for nn in ns_grid)
    return DichotomyProfile(
        label or b.provenance, tuple(ns_grid), estimates, _classify([e.value for e in estimates])
    )


def behrend_profile(family: FamilySpec, ns_grid: Sequence[int], n: int) -> DichotomyProfile:
    """Estimate the density of multiples of {b : no prime factor <= N}
    for each N of the grid and classify the trend."""
    return profile_moduli(family.expand(), ns_grid, n, label=family.describe())


@dataclass(frozen=True)
class TautnessReport:
    family: str
    qs: tuple[int, ...]
    ns_grid: tuple[int, ...]
    n: int
    profiles: tuple[DichotomyProfile, ...]
    verdict: str  # "taut-consistent" | "non-taut" | "inconclusive"
    witnesses: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "qs": list(self.qs),
            "Ns": list(self.ns_grid),
            "n": self.n,
            "profiles": [p.as_dict() for p in self.profiles],
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
        }


def tautness_diagnostic(
    family: FamilySpec, qs: Sequence[int], ns_grid: Sequence[int], n: int
) -> TautnessReport:
    """Profile every quotient family B/q; a behrend-like quotient is a
    witness against tautness, all-vanishing is taut-consistent."""
    b = family.expand()
    profiles = []
    witnesses = []
    for q in qs:
        bq = _strip_unit(quotient(b, q))
        prof = profile_moduli(bq, ns_grid, n, label=f"{family.describe()}/{q}")
        profiles.append(prof)
        if prof.classification == "behrend-like":
            witnesses.append(q)
    if witnesses:
        verdict = "non-taut"
    elif all(p.classification == "vanishing" for p in profiles):
        verdict = "taut-consistent"
    else:
        verdict = "inconclusive"
    return TautnessReport(
        family.describe(), tuple(qs), tuple(ns_grid), n, tuple(profiles), verdict, tuple(witnesses)
    )


@dataclass(frozen=True)
class PrimeExhaustResult:
    primes: tuple[int, ...]
    estimate: DensityEstimate
    verified: bool
    exponent_cap: int
    q_grid: tuple[int, ...]
    cutoff: int
    target: float

    def as_dict(self) -> dict:
        return {
            "P": list(self.primes),
            "estimate": self.estimate.as_dict(),
            "verified": self.verified,
            "L": self.exponent_cap,
            "Q0": list(self.q_grid),
            "N": self.cutoff,
            "target": self.target,
        }


def prime_exhaust(
    family: FamilySpec,
    avoid: Sequence[int],
    epsilon: float,
    *,
    n: int = 10**6,
    candidates: Sequence[int] = _CUTOFF_CANDIDATES,
) -> PrimeExhaustResult:
    """Search a finite prime set P, disjoint from `avoid`, whose removal
    leaves the family (minus its avoid-smooth part) with tiny density.

    Construction: pick the least L with sum(p**-L) < epsilon over the
    avoided primes, form the grid Q0 of avoid-smooth numbers with all
    exponents below L, then look for a cutoff N such that every
    quotient family B/q (q in Q0), stripped of prime factors <= N, has
    estimated density below epsilon / |Q0|. P is then the primes <= N
    outside `avoid`. The resulting estimate for the residual family is
    verified independently and reported either way.
    """
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    avoid_t = tuple(sorted(set(int(p) for p in avoid)))
    for p in avoid_t:
        if prime_factors(p) != (p,):
            raise PreconditionError(f"avoid set must contain primes, got {p}")
    b = family.expand()
    if avoid_t:
        cap = 1
        while sum(p ** -float(cap) for p in avoid_t) >= epsilon:
            cap += 1
            if cap > 64:
                raise SearchExhaustedError("no exponent cap L <= 64 achieves the tail bound")
    else:
        cap = 1
    if cap ** len(avoid_t) > _EXPONENT_GRID_CAP:
        raise SearchExhaustedError(
            f"exponent grid of size {cap}^{len(avoid_t)} exceeds {_EXPONENT_GRID_CAP}"
        )
    q_grid = tuple(
        sorted(
            math.prod(p**e for p, e in zip(avoid_t, exps))
            for exps in iproduct(range(cap), repeat=len(avoid_t))
        )
    )
    target = epsilon / len(q_grid)
    cutoff = None
    for nn in candidates:
        ok = True
        for q in q_grid:
            fam_q = spec_outside(_strip_unit(quotient(b, q)), nn)
            if recent_window_estimate(fam_q, n).value >= target:
                ok = False
                break
        if ok:
            cutoff = nn
            break
    if cutoff is None:
        raise SearchExhaustedError(
            f"no cutoff N in {tuple(candidates)} pushes all quotient profiles below {target:.3g}"
        )
    p_set = tuple(int(p) for p in primes_upto(cutoff) if int(p) not in avoid_t)
    smooth_values = set(restrict_spectrum(b, avoid_t).values)
    residual = bset(
        (m.value for m in b if m.value not in smooth_values and not (m.spectrum & set(p_set))),
        provenance=f"{family.describe()} | residual",
    )
    estimate = recent_window_estimate(residual, n)
    return PrimeExhaustResult(
        primes=p_set,
        estimate=estimate,
        verified=estimate.value < epsilon,
        exponent_cap=cap,
        q_grid=q_grid,
        cutoff=cutoff,
        target=target,
    )


@dataclass(frozen=True)
class ShiftInequalityReport:
    """Exact two-sided evaluation of the progression/free-shift inequality."""

    beta: int
    r: int
    n: int
    primes: tuple[int, ...]
    lhs: Fraction
    factor: Fraction
    reduced_density: Fraction
    rhs: Fraction
    holds: bool
    equality: bool

    def as_dict(self) -> dict:
        return {
            "beta": self.beta,
            "r": self.r,
            "n": self.n,
            "P": list(self.primes),
            "lhs": f"{self.lhs.numerator}/{self.lhs.denominator}",
            "factor": f"{self.factor.numerator}/{self.factor.denominator}",
            "reduced_density": f"{self.reduced_density.numerator}/{self.reduced_density.denominator}",
            "rhs": f"{self.rhs.numerator}/{self.rhs.denominator}",
            "holds": self.holds,
            "equality": self.equality,
        }


def lemma520_check(
    c: BSet,
    beta: int,
    r: int,
    n: int,
    primes: Sequence[int],
    *,
    lcm_cap: int = 10**8,
) -> ShiftInequalityReport:
    """Exact check that the density of {k = r mod beta with k+1..k+n all
    C-free} dominates prod(1 - n/p) times the same density with the
    multiples of P removed from C.

    Preconditions: every p in P is a prime > n with gcd(p, beta) = 1.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    ps = tuple(sorted(set(int(p) for p in primes)))
    for p in ps:
        if prime_factors(p) != (p,):
            raise PreconditionError(f"P must contain primes, got {p}")
        if p <= n:
            raise PreconditionError(f"prime {p} violates p > n = {n}")
        if math.gcd(p, beta) != 1:
            raise PreconditionError(f"prime {p} is not coprime to beta = {beta}")
    shifts = list(range(1, n + 1))
    lhs = exact_progression_free_density(c, beta, r, shifts, lcm_cap=lcm_cap)
    reduced = remove_multiples(c, ps)
    rhs0 = exact_progression_free_density(reduced, beta, r, shifts, lcm_cap=lcm_cap)
    factor = math.prod((Fraction(p - n, p) for p in ps), start=Fraction(1))
    rhs = factor * rhs0.value
    return ShiftInequalityReport(
        beta=beta,
        r=r,
        n=n,
        primes=ps,
        lhs=lhs.value,
        factor=factor,
        reduced_density=rhs0.value,
        rhs=rhs,
        holds=lhs.value >= rhs,
        equality=lhs.value == rhs,
    )


@dataclass(frozen=True)
class BlockRecurrenceReport:
    """Empirical recurrence of the multiples pattern read off at offset r."""

    family: str
    r: int
    n: int
    pattern: tuple[int, ...]  # I: the offsets i in 1..n with r+i a multiple
    window: int
    count: int
    frequency: Fraction
    witnesses: dict[int, int]  # per offset i in I, a modulus dividing r+i
    covering_modulus: int | None
    covering_bound: Fraction | None
    bound_is_exact_event: bool

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "r": self.r,
            "n": self.n,
            "I": list(self.pattern),
            "window": self.window,
            "count": self.count,
            "frequency": f"{self.frequency.numerator}/{self.frequency.denominator}",
            "witnesses": {str(i): b for i, b in self.witnesses.items()},
            "covering_modulus": self.covering_modulus,
            "covering_bound": (
                f"{self.covering_bound.numerator}/{self.covering_bound.denominator}"
                if self.covering_bound is not None
                else None
            ),
            "bound_is_exact_event": self.bound_is_exact_event,
        }


def as511_check(family: FamilySpec, r: int, n: int, window: int) -> BlockRecurrenceReport:
    """Read the pattern I = {i : r+i is a multiple} off the indicator and
    count k in [1, window] reproducing it exactly:
    {k+1..k+n} hits the multiples precisely at k+I.

    When every i in I has a modulus witness b | r+i, the residue class
    k = r mod lcm(witnesses) forces the containment side, giving the
    reported 1/lcm lower bound; for I = {1..n} containment is the whole
    event, so the bound then applies to the exact count.
    """
    if not 1 <= n <= 8:
        raise PreconditionError("pattern length n must be in 1..8")
    if window < n + 1:
        raise PreconditionError("window too small")
    b = family.expand()
    head = sieve_interval(b, r + 1, n)
    pattern = tuple(i for i in range(1, n + 1) if head.bits[i - 1] == 0)
    word = sieve_interval(b, 2, window + n)
    ok = np.ones(window, dtype=bool)
    for i in range(1, n + 1):
        want = 0 if i in pattern else 1
        ok &= word.bits[i - 1 : i - 1 + window] == want
    count = int(np.count_nonzero(ok))
    witnesses: dict[int, int] = {}
    for i in pattern:
        divisor = next((m.value for m in b if (r + i) % m.value == 0), None)
        if divisor is not None:
            witnesses[i] = divisor
    covering_modulus = None
    covering_bound = None
    if pattern and len(witnesses) == len(pattern):
        covering_modulus = math.lcm(*witnesses.values())
        covering_bound = Fraction(1, covering_modulus)
    return BlockRecurrenceReport(
        family=family.describe(),
        r=r,
        n=n,
        pattern=pattern,
        window=window,
        count=count,
        frequency=Fraction(count, window),
        witnesses=witnesses,
        covering_modulus=covering_modulus,
        covering_bound=covering_bound,
        bound_is_exact_event=pattern == tuple(range(1, n + 1)),
    )
