"""Numba detection and the switch between compiled and pure-numpy kernels.

Set ``CDULAB_NUMBA=0`` in the environment to force the numpy path even when
numba is importable.
"""

import os


def _noop_jit(*args, **kwargs):
    """Stand-in for ``numba.njit`` that returns the function untouched."""
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(f):
        return f

    return wrap


def _have_numba():
    try:
        import numba  # noqa: F401

        return True
    except ImportError:
        return False


HAVE_NUMBA = _have_numba()

if HAVE_NUMBA:
    from numba import njit, prange
else:
    njit = _noop_jit
    prange = range


def numba_enabled():
    """True when the compiled kernels should be used."""
    flag = os.environ.get("CDULAB_NUMBA", "1").strip().lower()
    return HAVE_NUMBA and flag not in ("0", "false", "no", "off")
