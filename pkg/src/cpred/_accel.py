"""Backend selection for the numeric kernels.

Numba is used when it is importable and ``CPRED_DISABLE_NUMBA`` is unset
(or set to ``0``/``false``). ``CPRED_THREADS`` caps the numba thread pool.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}


def _flag(name):
    return os.environ.get(name, "").strip().lower() not in _FALSY


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAS_NUMBA = _numba is not None
USE_NUMBA = HAS_NUMBA and not _flag("CPRED_DISABLE_NUMBA")


def _configure_threads():
    if not HAS_NUMBA:
        return
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the bundled TBB is often too old and only produces a warning
        _numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

    raw = os.environ.get("CPRED_THREADS", "").strip()
    if not raw:
        return
    try:
        n = int(raw)
    except ValueError:
        return
    if n >= 1:
        _numba.set_num_threads(min(n, _numba.config.NUMBA_NUM_THREADS))


_configure_threads()


def njit(*args, **kwargs):
    """``numba.njit`` when numba is installed, otherwise an identity decorator."""
    if HAS_NUMBA:
        kwargs.setdefault("cache", True)
        return _numba.njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func


if HAS_NUMBA:
    prange = _numba.prange
else:  # pragma: no cover
    prange = range


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
