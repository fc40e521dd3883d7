"""Numba switch.

Set ``FDEHAT_DISABLE_NUMBA=1`` before import to run every kernel through its
pure-numpy implementation instead of the compiled loops.
"""

import os

_FLAG = os.environ.get("FDEHAT_DISABLE_NUMBA", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("1", "true", "yes", "on")

JIT_OPTIONS = {"nogil": True, "cache": True}


def njit(fn):
    """Compile ``fn`` with numba when available; otherwise return it untouched.

    The uncompiled function stays reachable as ``fn.py_func`` either way so
    tests can compare the compiled loop against its interpreted source.
    """
    if numba is None:
        fn.py_func = fn
        return fn
    return numba.njit(**JIT_OPTIONS)(fn)
