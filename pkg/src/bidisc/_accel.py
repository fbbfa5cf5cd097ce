"""Numba detection and the switch between compiled and pure-numpy kernels.

Set ``BIDISC_DISABLE_NUMBA=1`` in the environment to force the numpy path.
The flag is read once at import time.
"""
import os

_FLAG = os.environ.get("BIDISC_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG in ("1", "true", "yes", "on")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when numba is installed, otherwise a no-op decorator.

    Compiled functions are always built when numba is present, so the
    benchmark and the cross-backend tests can call both paths in one
    process; ``USE_NUMBA`` only decides which one the library dispatches to.
    """
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrapper(f):
        return f

    return wrapper


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
