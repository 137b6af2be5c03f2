from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from bfree.density import (
    DensityBounds,
    coprime_product_check,
    davenport_erdos_sequence,
    exact_density,
    exact_density_or_bounds,
    exact_progression_free_density,
    light_tails_profile,
    log_density_estimate,
    natural_density_bounds,
    recent_window_estimate,
)
from bfree.errors import NotCoprimeError, PeriodOverflowError, PreconditionError
from bfree.families import FamilySpec, bset, parse_family
from oracles import brute_density, brute_progression_free

small_moduli = st.lists(st.integers(min_value=2, max_value=60), min_size=1, max_size=6)


def test_exact_density_examples():
    assert exact_density(bset([2, 3])).value == brute_density([2, 3]) == Fraction(2, 3)
    assert exact_density(bset([6, 10, 15])).value == brute_density([6, 10, 15]) == Fraction(4, 15)
    assert exact_density(bset([4, 9, 25])).value == brute_density([4, 9, 25]) == Fraction(9, 25)


def test_exact_density_degenerate():
    assert exact_density(bset([])).value == 0
    assert exact_density(bset([1])).value == 1


@given(small_moduli)
def test_subset_equals_sieve(values):
    b = bset(values)
    assume(b.lcm_capped(10**6) is not None)
    by_subset = exact_density(b, method="subset")
    by_sieve = exact_density(b, method="sieve")
    assert by_subset.value == by_sieve.value
    assert by_subset.period == by_sieve.period == b.lcm()


@given(small_moduli, st.lists(st.integers(min_value=2, max_value=60), max_size=3))
def test_density_monotone_under_union(values, extra):
    b = bset(values)
    bigger = bset(list(values) + list(extra))
    assume(b.lcm_capped(10**6) and bigger.lcm_capped(10**6))
    assert exact_density(b).value <= exact_density(bigger).value


def test_bounds_when_period_overflows():
    values = [4, 9, 25, 49, 121, 169, 289, 361]  # lcm ~ 2.7e12
    b = bset(values)
    res = exact_density_or_bounds(b, lcm_cap=10**6)
    assert isinstance(res, DensityBounds)
    truth = exact_density(b, lcm_cap=10**14).value
    assert res.lower <= truth <= res.upper
    assert res.pruned_branches > 0
    with pytest.raises(PeriodOverflowError):
        exact_density(b, lcm_cap=10**6)


def test_sieve_method_refuses_oversized_period():
    with pytest.raises(PeriodOverflowError):
        exact_density(bset([4, 9, 25, 49, 121, 169, 289, 361]), method="sieve", lcm_cap=10**6)


def test_progression_examples():
    assert exact_progression_free_density(bset([9]), 2, 1, [1, 2]).value == Fraction(7, 18)
    assert exact_progression_free_density(bset([5, 9, 25]), 2, 1, [1, 2]).value == Fraction(7, 30)
    assert exact_progression_free_density(bset([]), 3, 0, [1]).value == Fraction(1, 3)


@given(
    st.lists(st.integers(min_value=2, max_value=30), max_size=3),
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=-3, max_value=7),
    st.lists(st.integers(min_value=-2, max_value=4), max_size=3),
)
def test_progression_matches_brute_oracle(values, beta, r, shifts):
    b = bset(values) if values else bset([])
    assume((b.lcm_capped(2000) or 10**9) * beta <= 5000)
    got = exact_progression_free_density(b, beta, r, shifts)
    assert got.value == brute_progression_free(b.values, beta, r, shifts)


@given(
    st.lists(st.integers(min_value=2, max_value=40), min_size=1, max_size=4),
    st.integers(min_value=1, max_value=3),
)
def test_progression_invariant_under_primitivize(values, n):
    # feeding the raw list and its primitivization gives the same value
    assume(bset(values).lcm_capped(10**5) is not None)
    shifts = list(range(1, n + 1))
    raw = exact_progression_free_density(bset(values), 1, 0, shifts)
    prim = exact_progression_free_density(bset(bset(values).values), 1, 0, shifts)
    assert raw.value == prim.value


def test_natural_bounds_examples():
    lower, upper = natural_density_bounds(bset([2]), 10**4)
    assert abs(lower.value - 0.5) < 1e-3 and abs(upper.value - 0.5) < 1e-3
    lower, upper = natural_density_bounds(bset([]), 1000)
    assert lower.value == upper.value == 0.0
    assert lower.kind == "natural-lower" and upper.kind == "natural-upper"
    assert lower.n == upper.n == 1000


@given(small_moduli, st.integers(min_value=10, max_value=3000))
def test_natural_bounds_ordered(values, n):
    lower, upper = natural_density_bounds(bset(values), n)
    assert lower.value <= upper.value
    assert lower.trace == upper.trace
    assert lower.trace[-1][0] == n


def test_prime_squares_truncated_natural_final():
    fam = parse_family("prime_squares:10000")
    lower, upper = natural_density_bounds(fam.expand(), 10**6)
    final = lower.trace[-1][1]
    assert abs(final - 0.3921) < 0.002


def test_log_estimate_examples():
    assert abs(log_density_estimate(bset([2]), 10**5).value - 0.5) < 1e-3
    assert abs(log_density_estimate(bset([2, 3]), 10**5).value - 2 / 3) < 2e-3
    est = log_density_estimate(bset([1]), 1000)
    assert est.value == 1.0
    assert est.kind == "logarithmic" and est.n == 1000


def test_log_and_natural_agree_for_finite_sets():
    for values in ([2, 3], [6, 10, 15]):
        b = bset(values)
        log_est = log_density_estimate(b, 10**6).value
        lower, _ = natural_density_bounds(b, 10**6)
        assert abs(log_est - lower.trace[-1][1]) < 0.01
        assert abs(log_est - float(exact_density(b).value)) < 0.01


def test_recent_window_estimate_alternation():
    est = recent_window_estimate(bset([2]), 10**4)
    assert est.value == 0.5
    assert est.kind == "natural-lower" and est.n == 10**4


def test_davenport_erdos_prime_squares():
    fam = parse_family("prime_squares:10000")
    seq = davenport_erdos_sequence(fam, [4, 9, 25, 49])
    assert [d.value for d in seq] == [
        Fraction(1, 4),
        Fraction(1, 3),
        Fraction(9, 25),
        Fraction(457, 1225),
    ]
    assert all(a.value <= b.value for a, b in zip(seq, seq[1:]))


def test_davenport_erdos_examples():
    assert [d.value for d in davenport_erdos_sequence(parse_family("list:2"), [2])] == [Fraction(1, 2)]
    seq = davenport_erdos_sequence(parse_family("list:6,10,15"), [6, 10, 15])
    assert [d.value for d in seq] == [Fraction(1, 6), Fraction(7, 30), Fraction(4, 15)]


def test_davenport_erdos_requires_increasing():
    with pytest.raises(PreconditionError):
        davenport_erdos_sequence(parse_family("list:2,3"), [3, 2])


@given(st.lists(st.integers(min_value=2, max_value=40), min_size=1, max_size=5))
def test_davenport_erdos_non_decreasing(values):
    fam = FamilySpec(kind="list", values=tuple(sorted(set(values))))
    assume(fam.expand().lcm_capped(10**6) is not None)
    ks = sorted(set(values))
    seq = davenport_erdos_sequence(fam, ks)
    assert all(a.value <= b.value for a, b in zip(seq, seq[1:]))


def test_light_tails_finite_family_vanishes():
    ests = light_tails_profile(parse_family("list:6,10,15"), [15, 100], 10**4)
    assert ests[0].value == 0.0 and ests[1].value == 0.0


def test_light_tails_prime_squares_bounded_by_tail_sum():
    fam = parse_family("prime_squares:100000")
    ests = light_tails_profile(fam, [10, 100, 1000], 10**5)
    values = [e.value for e in ests]
    assert values == sorted(values, reverse=True)
    for k, est in zip([10, 100, 1000], values):
        bound = sum(1 / p**2 for p in range(2, 1000) if p * p > k and _is_prime(p))
        assert est <= bound + 1e-3


def test_light_tails_scaled_primes_do_not_vanish():
    fam = parse_family("scale:2,primes:100000")
    ests = light_tails_profile(fam, [10, 100], 10**5)
    for est in ests:
        # converges to 1/2 from below; the point is it stays far from 0
        assert 0.4 <= est.value <= 0.51


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def test_coprime_product_examples():
    inter, da, dc = coprime_product_check(bset([2]), bset([3]))
    assert (inter.value, da.value, dc.value) == (Fraction(1, 6), Fraction(1, 2), Fraction(1, 3))
    inter, da, dc = coprime_product_check(bset([4]), bset([9]))
    assert (inter.value, da.value, dc.value) == (Fraction(1, 36), Fraction(1, 4), Fraction(1, 9))


def test_coprime_product_rejects_shared_factor():
    with pytest.raises(NotCoprimeError) as exc:
        coprime_product_check(bset([2]), bset([6]))
    assert exc.value.a == 2 and exc.value.c == 6


@given(
    st.lists(st.sampled_from([2, 4, 8, 3, 9, 5, 25, 7]), min_size=1, max_size=3),
    st.lists(st.sampled_from([11, 121, 13, 17, 19, 23]), min_size=1, max_size=3),
)
def test_coprime_product_multiplicative(a_vals, c_vals):
    a, c = bset(a_vals), bset(c_vals)
    inter, da, dc = coprime_product_check(a, c, lcm_cap=10**15)
    assert inter.value == da.value * dc.value
