"""Numba switch.

Set ``BARRICADE_DISABLE_NUMBA=1`` to run every kernel through the pure
numpy/Python path. The flag is read once at import time.
"""
import os

_DISABLED = os.environ.get("BARRICADE_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    NUMBA_ENABLED = True
except ImportError:
    _njit = None
    NUMBA_ENABLED = False


def jit(func):
    """Compile ``func`` in nopython mode when numba is enabled, else return it as is."""
    if NUMBA_ENABLED:
        return _njit(cache=True, nogil=True)(func)
    return func
