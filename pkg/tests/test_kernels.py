import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bfree.kernels import _numpy as np_impl

nb_impl = pytest.importorskip("bfree.kernels._numba")

bits_arrays = st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=400).map(
    lambda xs: np.array(xs, dtype=np.uint8)
)


@given(
    st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=8),
    st.integers(min_value=-300, max_value=300),
    st.integers(min_value=1, max_value=500),
)
def test_mark_multiples_backends_agree(moduli, start, length):
    mods = np.array(sorted(set(moduli)), dtype=np.int64)
    a = np.ones(length, dtype=np.uint8)
    b = np.ones(length, dtype=np.uint8)
    np_impl.mark_multiples(a, start, mods)
    nb_impl.mark_multiples(b, start, mods)
    assert np.array_equal(a, b)
    # brute check
    expected = np.array(
        [0 if any((start + i) % m == 0 for m in mods) else 1 for i in range(length)],
        dtype=np.uint8,
    )
    assert np.array_equal(a, expected)


@given(bits_arrays, st.integers(min_value=1, max_value=8))
def test_block_code_counts_backends_agree(bits, n):
    if bits.size < n:
        return
    a = np_impl.block_code_counts(bits, n)
    b = nb_impl.block_code_counts(bits, n)
    assert np.array_equal(a, b)
    word = "".join(map(str, bits))
    for code in range(1 << n):
        pattern = format(code, f"0{n}b")
        expected = sum(1 for i in range(len(word) - n + 1) if word[i : i + n] == pattern)
        assert a[code] == expected


@given(bits_arrays)
def test_max_zero_run_backends_agree(bits):
    assert np_impl.max_zero_run(bits) == nb_impl.max_zero_run(bits)


def test_env_flag_selects_numpy():
    env = dict(os.environ, BFREE_KERNELS="numpy")
    out = subprocess.run(
        [sys.executable, "-c", "from bfree.kernels import backend; print(backend())"],
        capture_output=True, text=True, env=env,
    )
    assert out.stdout.strip() == "numpy"


def test_env_flag_rejects_unknown():
    env = dict(os.environ, BFREE_KERNELS="sparkles")
    out = subprocess.run(
        [sys.executable, "-c", "import bfree.kernels"],
        capture_output=True, text=True, env=env,
    )
    assert out.returncode != 0


def test_results_identical_across_backends_end_to_end():
    # full pipeline comparison via subprocesses with forced backends
    code = (
        "from bfree.families import parse_family;"
        "from bfree.density import exact_density, log_density_estimate;"
        "small = parse_family('prime_squares:200').expand();"
        "big = parse_family('prime_squares:10000').expand();"
        "print(exact_density(small).value, log_density_estimate(big, 10**5).value)"
    )
    outs = []
    for backend in ("numpy", "numba"):
        env = dict(os.environ, BFREE_KERNELS=backend)
        res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
        assert res.returncode == 0, res.stderr
        outs.append(res.stdout)
    assert outs[0] == outs[1]
