"""Kernel dispatch: numba-accelerated loops with a pure-numpy fallback.

The backend is picked once at import time from the BFREE_KERNELS
environment variable:

    BFREE_KERNELS=auto    use numba if it imports, else numpy (default)
    BFREE_KERNELS=numba   require numba, fail loudly if unavailable
    BFREE_KERNELS=numpy   force the pure-numpy path

Both backends produce bit-identical integer results. Floating-point
reductions live outside the kernels (always numpy) so that reports do
not depend on the backend.
"""

import os

from . import _numpy as _np_impl

_requested = os.environ.get("BFREE_KERNELS", "auto").strip().lower()

if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(f"BFREE_KERNELS must be auto, numba or numpy, got {_requested!r}")

if _requested == "numpy":
    _impl = _np_impl
    BACKEND = "numpy"
else:
    try:
        from . import _numba as _nb_impl

        _impl = _nb_impl
        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        _impl = _np_impl
        BACKEND = "numpy"

mark_multiples = _impl.mark_multiples
block_code_counts = _impl.block_code_counts
max_zero_run = _impl.max_zero_run


def backend() -> str:
    """Name of the active kernel backend."""
    return BACKEND


def set_threads(count: int) -> None:
    """Accept and validate a worker count.

    Every current kernel is sequential, so this is a recorded no-op;
    results are identical for any thread count, which is exactly the
    determinism contract reports rely on.
    """
    if count < 1:
        raise ValueError("thread count must be >= 1")
