"""Brute-force reference implementations used as independent test oracles.

Everything here is deliberately naive divisibility checking; none of it
shares code with the package internals it verifies.
"""

from fractions import Fraction


def brute_multiples(values, lo, hi):
    """Set of k in [lo, hi] divisible by at least one of the values."""
    return {k for k in range(lo, hi + 1) if any(k % v == 0 for v in values)}


def brute_word(values, start, length):
    """0/1 string: position i is 1 iff start+i is divisible by no value."""
    return "".join(
        "0" if any((start + i) % v == 0 for v in values) else "1" for i in range(length)
    )


def brute_density(values):
    """Exact density of the multiples of `values` by one-period counting."""
    import math

    l = math.lcm(*values) if values else 1
    return Fraction(len(brute_multiples(values, 1, l)), l)


def brute_progression_free(values, beta, r, shifts):
    """Exact density of {k : k = r (mod beta), k+i free for all shifts i}."""
    import math

    l = math.lcm(beta, math.lcm(*values) if values else 1)
    count = 0
    for k in range(l):
        if k % beta != r % beta:
            continue
        if all(not any((k + i) % v == 0 for v in values) for i in shifts):
            count += 1
    return Fraction(count, l)


def brute_blocks(word, n):
    """All distinct length-n substrings of a 0/1 string."""
    return {word[i : i + n] for i in range(len(word) - n + 1)}


def brute_max_zero_run(word):
    best = run = 0
    for ch in word:
        run = run + 1 if ch == "0" else 0
        best = max(best, run)
    return best
