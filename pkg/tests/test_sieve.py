import io

import pytest
from hypothesis import given, strategies as st

from bfree.density import exact_density
from bfree.families import bset
from bfree.sieve import count_multiples, dump_segment, load_segment, sieve_interval
from oracles import brute_multiples, brute_word

small_moduli = st.lists(st.integers(min_value=2, max_value=60), min_size=1, max_size=6)


def test_sieve_examples():
    assert sieve_interval(bset([2]), 1, 6).to01() == "101010"
    assert sieve_interval(bset([4, 9, 25]), 1, 10).to01() == brute_word([4, 9, 25], 1, 10)
    assert brute_word([4, 9, 25], 1, 10) == "1110111001"
    assert sieve_interval(bset([1]), 1, 5).to01() == "00000"


def test_count_examples():
    assert count_multiples(bset([2, 3]), 1, 12) == len(brute_multiples([2, 3], 1, 12)) == 8
    assert count_multiples(bset([]), 5, 100) == 0
    assert count_multiples(bset([2]), 1, 10) == 5


def test_empty_interval():
    seg = sieve_interval(bset([2, 3]), 7, 0)
    assert seg.length == 0 and seg.to01() == ""
    assert count_multiples(bset([2, 3]), 7, 0) == 0


def test_zero_is_a_multiple_of_everything():
    seg = sieve_interval(bset([97]), -3, 7)  # covers -3..3, only 0 is a multiple
    assert seg.to01() == "1110111"


@given(
    small_moduli,
    st.integers(min_value=-200, max_value=200),
    st.integers(min_value=0, max_value=300),
)
def test_matches_brute_oracle(values, start, length):
    b = bset(values)
    assert sieve_interval(b, start, length).to01() == brute_word(b.values, start, length)


@given(
    small_moduli,
    st.integers(min_value=-100, max_value=100),
    st.integers(min_value=1, max_value=200),
    st.data(),
)
def test_segmentation_invariance(values, start, length, data):
    b = bset(values)
    cut = data.draw(st.integers(min_value=0, max_value=length))
    whole = sieve_interval(b, start, length)
    left = sieve_interval(b, start, cut)
    right = sieve_interval(b, start + cut, length - cut)
    assert whole.to01() == left.to01() + right.to01()


@given(small_moduli, st.integers(min_value=1, max_value=150), st.integers(min_value=1, max_value=100))
def test_negation_symmetry(values, a, length):
    b = bset(values)
    pos = sieve_interval(b, a, length)
    neg = sieve_interval(b, -a - length + 1, length)
    assert neg.to01() == pos.to01()[::-1]


def test_segment_length_does_not_change_bits():
    b = bset([2, 3, 7, 11])
    full = sieve_interval(b, -50, 1000, segment_length=1 << 20)
    tiny = sieve_interval(b, -50, 1000, segment_length=17)
    assert full.same_word(tiny)


@given(small_moduli)
def test_one_period_count_equals_density(values):
    b = bset(values)
    period = b.lcm_capped(10**6)
    if period is None:
        return
    dens = exact_density(b)
    assert count_multiples(b, 1, period) == period * dens.value


def test_serialization_round_trip():
    seg = sieve_interval(bset([2, 3, 5]), -37, 101)
    buf = io.BytesIO()
    dump_segment(seg, buf)
    assert len(buf.getvalue()) == 16 + (101 + 7) // 8
    buf.seek(0)
    back = load_segment(buf)
    assert back.same_word(seg)


def test_serialization_empty_segment():
    seg = sieve_interval(bset([2]), 5, 0)
    buf = io.BytesIO()
    dump_segment(seg, buf)
    buf.seek(0)
    back = load_segment(buf)
    assert back.start == 5 and back.length == 0


def test_negative_length_rejected():
    with pytest.raises(ValueError):
        sieve_interval(bset([2]), 0, -1)


def test_segments_are_immutable():
    seg = sieve_interval(bset([2]), 1, 10)
    with pytest.raises(ValueError):
        seg.bits[0] = 0
