"""Optional numba acceleration.

Set ``HEAWOOD3D_DISABLE_NUMBA=1`` to run every kernel as plain Python over
numpy arrays. The flag is read once, at import time.
"""
import os

DISABLED = os.environ.get("HEAWOOD3D_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

NUMBA_ENABLED = numba is not None and not DISABLED


def jit(func):
    """``numba.njit(cache=True)`` when enabled, otherwise the function itself.

    The undecorated function is always reachable as ``.py_func`` so that the
    benchmark can time both paths in one process.
    """
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(func)
    func.py_func = func
    return func
