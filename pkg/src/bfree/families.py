"""Moduli sets: primitivization, spectra, quotients and family generators.

A BSet is a finite, primitive (no element divides another), strictly
increasing set of moduli. Infinite families are handled through
FamilySpec, a small generator language with an explicit truncation
bound, so that every downstream report can state the truncation it was
computed at.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import FamilyParseError, PreconditionError

_SPF_CAP = 10_000_000  # build a smallest-prime-factor table up to this


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit, as an int64 array."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


_spf_table: np.ndarray | None = None


def _spf_upto(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit (cached, grown geometrically)."""
    global _spf_table
    if _spf_table is None or _spf_table.size <= limit:
        current = 0 if _spf_table is None else _spf_table.size
        size = max(limit + 1, 2 * current, 1 << 16)
        spf = np.zeros(size, dtype=np.int64)
        for p in range(2, math.isqrt(size - 1) + 1):
            if spf[p] == 0:
                spf[p * p :: p][spf[p * p :: p] == 0] = p
                spf[p] = p
        rest = np.flatnonzero(spf[2:] == 0) + 2
        spf[rest] = rest
        _spf_table = spf
    return _spf_table


def prime_factors(value: int) -> tuple[int, ...]:
    """Distinct prime divisors of value, ascending. Spec(1) is empty."""
    if value < 1:
        raise PreconditionError(f"modulus must be >= 1, got {value}")
    if value <= _SPF_CAP:
        spf = _spf_upto(min(max(value, 2), _SPF_CAP))
        out = []
        v = value
        while v > 1:
            p = int(spf[v])
            out.append(p)
            while v % p == 0:
                v //= p
        return tuple(out)
    # trial division for outsized moduli
    out = []
    v = value
    d = 2
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            while v % d == 0:
                v //= d
        d += 1 if d == 2 else 2
    if v > 1:
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class Modulus:
    """A modulus together with its spectrum (set of prime divisors)."""

    value: int
    spectrum: frozenset[int]

    @classmethod
    def of(cls, value: int) -> "Modulus":
        return cls(int(value), frozenset(prime_factors(int(value))))

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class BSet:
    """A primitive, sorted, duplicate-free set of moduli."""

    elements: tuple[Modulus, ...]
    provenance: str = ""

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(m.value for m in self.elements)

    def values_array(self) -> np.ndarray:
        return np.fromiter((m.value for m in self.elements), dtype=np.int64, count=len(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, value: int) -> bool:
        return any(m.value == value for m in self.elements)

    def lcm_capped(self, cap: int) -> int | None:
        """lcm of all moduli, or None as soon as it exceeds cap."""
        l = 1
        for m in self.elements:
            l = l * m.value // math.gcd(l, m.value)
            if l > cap:
                return None
        return l

    def lcm(self) -> int:
        l = 1
        for m in self.elements:
            l = l * m.value // math.gcd(l, m.value)
        return l

    def restrict_to(self, bound: int, note: str = "") -> "BSet":
        """Sub-BSet of elements <= bound (a primitive subset stays primitive)."""
        kept = tuple(m for m in self.elements if m.value <= bound)
        return BSet(kept, _tag(self.provenance, note or f"<= {bound}"))


def _tag(provenance: str, note: str) -> str:
    return f"{provenance} | {note}" if provenance else note


def _primitive_values(values: Sequence[int]) -> list[int]:
    """Minimal elements of `values` under divisibility, sorted ascending."""
    vals = sorted(set(int(v) for v in values))
    if not vals:
        return []
    if vals[0] < 1:
        raise PreconditionError(f"moduli must be >= 1, got {vals[0]}")
    if vals[0] == 1:
        return [1]
    top = vals[-1]
    if len(vals) > 1500 and top <= 50_000_000:
        # sieve out proper multiples in one pass
        present = np.zeros(top + 1, dtype=bool)
        present[vals] = True
        keep = []
        for v in vals:
            if present[v]:
                keep.append(v)
                present[2 * v :: v] = False
        return keep
    keep: list[int] = []
    for v in vals:
        if not any(v % u == 0 for u in keep):
            keep.append(v)
    return keep


def bset(values: Iterable[int], provenance: str = "") -> BSet:
    """Build a BSet from arbitrary moduli: dedupe, sort, primitivize.

    If 1 is present the result is {1} (every integer is a multiple).
    """
    kept = _primitive_values(list(values))
    return BSet(tuple(Modulus.of(v) for v in kept), provenance)


def primitivize(values: Iterable[int], provenance: str = "") -> BSet:
    """Alias of bset(); the constructor is the primitivization."""
    return bset(values, provenance)


def spec_within(b: BSet, n: int) -> BSet:
    """Elements whose spectrum lies inside {1..n} (all prime factors <= n)."""
    kept = tuple(m for m in b.elements if all(p <= n for p in m.spectrum))
    return BSet(kept, _tag(b.provenance, f"spec_within({n})"))


def spec_outside(b: BSet, n: int) -> BSet:
    """Elements whose spectrum avoids {1..n} (no prime factor <= n)."""
    kept = tuple(m for m in b.elements if all(p > n for p in m.spectrum))
    return BSet(kept, _tag(b.provenance, f"spec_outside({n})"))


def quotient(b: BSet, q: int) -> BSet:
    """{m/q : m in B, q | m}. Quotients of a primitive set are primitive."""
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")
    kept = tuple(Modulus.of(m.value // q) for m in b.elements if m.value % q == 0)
    return BSet(kept, _tag(b.provenance, f"/{q}"))


def restrict_spectrum(b: BSet, primes: Iterable[int]) -> BSet:
    """Elements all of whose prime factors lie in the given prime set."""
    pset = frozenset(int(p) for p in primes)
    kept = tuple(m for m in b.elements if m.spectrum <= pset)
    return BSet(kept, _tag(b.provenance, f"spectrum<={sorted(pset)}"))


def remove_multiples(b: BSet, primes: Iterable[int]) -> BSet:
    """Elements not divisible by any of the given primes."""
    pset = frozenset(int(p) for p in primes)
    kept = tuple(m for m in b.elements if not (m.spectrum & pset))
    return BSet(kept, _tag(b.provenance, f"drop multiples of {sorted(pset)}"))


def find_coprime_subset(b: BSet, k: int) -> list[Modulus] | None:
    """Up to k pairwise coprime elements by greedy scan in increasing order.

    Returns None when the greedy scan cannot reach size k within the
    truncation; that is a witness of absence only for the scan order,
    but pairwise-sharing families genuinely have none.
    """
    chosen: list[Modulus] = []
    used: set[int] = set()
    for m in b.elements:
        if not (m.spectrum & used):
            chosen.append(m)
            used |= m.spectrum
            if len(chosen) == k:
                return chosen
    return None


# ---------------------------------------------------------------------------
# family generators


FamilyPredicate = Callable[[int], Iterable[int]]

_PREDICATES: dict[str, FamilyPredicate] = {}


def register_family_predicate(name: str, generator: FamilyPredicate) -> None:
    """Register a named generator: generator(limit) -> moduli <= limit."""
    _PREDICATES[name] = generator


def _prime_cubes(limit: int) -> Iterable[int]:
    return (int(p) ** 3 for p in primes_upto(round(limit ** (1 / 3)) + 1) if p**3 <= limit)


def _semiprimes(limit: int) -> Iterable[int]:
    ps = [int(p) for p in primes_upto(limit // 2)]
    for i, p in enumerate(ps):
        for q in ps[i + 1 :]:
            if p * q > limit:
                break
            yield p * q


register_family_predicate("prime_cubes", _prime_cubes)
register_family_predicate("semiprimes", _semiprimes)


@dataclass(frozen=True)
class FamilySpec:
    """Deterministic, reproducible recipe for a (possibly truncated) family.

    kind is one of "list", "primes", "prime_squares", "scale",
    "predicate". Non-list kinds carry a mandatory truncation bound on
    the modulus values they generate.
    """

    kind: str
    bound: int | None = None
    values: tuple[int, ...] = ()
    scale: int = 1
    inner: "FamilySpec | None" = None
    predicate: str = ""

    def describe(self) -> str:
        if self.kind == "list":
            return "list:" + ",".join(str(v) for v in self.values)
        if self.kind == "scale":
            return f"scale:{self.scale},{self.inner.describe()}"
        if self.kind == "predicate":
            return f"predicate:{self.predicate}:{self.bound}"
        return f"{self.kind}:{self.bound}"

    def natural_bound(self) -> int:
        if self.kind == "list":
            return max(self.values) if self.values else 0
        if self.kind == "scale":
            return self.scale * self.inner.natural_bound()
        return int(self.bound)

    def expand(self, limit: int | None = None) -> BSet:
        """Materialize the family up to min(limit, own bound) as a BSet."""
        eff = self.natural_bound() if limit is None else min(limit, self.natural_bound())
        return bset(self._generate(eff), provenance=f"{self.describe()} @<={eff}")

    def _generate(self, limit: int) -> Iterable[int]:
        if self.kind == "list":
            return (v for v in self.values if v <= limit)
        if self.kind == "primes":
            return (int(p) for p in primes_upto(limit))
        if self.kind == "prime_squares":
            return (int(p) * int(p) for p in primes_upto(math.isqrt(limit)))
        if self.kind == "scale":
            return (self.scale * v for v in self.inner._generate(limit // self.scale))
        if self.kind == "predicate":
            return _PREDICATES[self.predicate](limit)
        raise FamilyParseError(f"unknown family kind {self.kind!r}")


def parse_family(text: str) -> FamilySpec:
    """Parse the family mini-language.

    Grammar: `list:6,10,15` | `primes:M` | `prime_squares:M` |
    `scale:r,<inner>` | `predicate:<name>:M`. The truncation bound M is
    mandatory for every non-list kind.
    """
    text = text.strip()
    head, sep, rest = text.partition(":")
    if not sep:
        raise FamilyParseError(f"missing ':' in family spec {text!r}")
    if head == "list":
        try:
            vals = tuple(sorted({int(v) for v in rest.split(",") if v.strip()}))
        except ValueError as e:
            raise FamilyParseError(f"bad list entry in {text!r}") from e
        if not vals:
            raise FamilyParseError("empty list family")
        if min(vals) < 1:
            raise FamilyParseError("list moduli must be >= 1")
        return FamilySpec(kind="list", values=vals)
    if head in ("primes", "prime_squares"):
        return FamilySpec(kind=head, bound=_parse_bound(rest, text))
    if head == "scale":
        factor, sep2, inner = rest.partition(",")
        if not sep2:
            raise FamilyParseError(f"scale spec needs 'scale:r,<inner>', got {text!r}")
        try:
            r = int(factor)
        except ValueError as e:
            raise FamilyParseError(f"bad scale factor in {text!r}") from e
        if r < 1:
            raise FamilyParseError("scale factor must be >= 1")
        return FamilySpec(kind="scale", scale=r, inner=parse_family(inner))
    if head == "predicate":
        name, sep2, bound = rest.partition(":")
        if not sep2:
            raise FamilyParseError(f"predicate spec needs 'predicate:<name>:M', got {text!r}")
        if name not in _PREDICATES:
            raise FamilyParseError(f"unknown predicate {name!r} (known: {sorted(_PREDICATES)})")
        return FamilySpec(kind="predicate", predicate=name, bound=_parse_bound(bound, text))
    raise FamilyParseError(f"unknown family kind {head!r}")


def _parse_bound(text: str, full: str) -> int:
    try:
        m = int(text)
    except ValueError as e:
        raise FamilyParseError(f"bad truncation bound in {full!r}") from e
    if m < 1:
        raise FamilyParseError(f"truncation bound must be >= 1 in {full!r}")
    return m
