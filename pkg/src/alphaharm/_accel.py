"""Backend selection for the hot kernels.

``ALPHAHARM_BACKEND=numpy`` forces the pure-numpy path; anything else (or unset)
uses numba when it imports.  ``ALPHAHARM_NUM_THREADS`` caps numba's thread pool.
"""
import functools
import logging
import os

logger = logging.getLogger("alphaharm")

BACKEND_ENV = "ALPHAHARM_BACKEND"
THREADS_ENV = "ALPHAHARM_NUM_THREADS"

try:
    import numba as nb

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    nb = None
    HAVE_NUMBA = False


def requested_backend():
    name = os.environ.get(BACKEND_ENV, "numba").strip().lower()
    if name not in ("numba", "numpy"):
        logger.warning("unknown %s=%r, falling back to numba", BACKEND_ENV, name)
        name = "numba"
    if name == "numba" and not HAVE_NUMBA:
        logger.warning("numba not importable, using the numpy backend")
        name = "numpy"
    return name


if HAVE_NUMBA:
    njit = functools.partial(nb.njit, cache=True, nogil=True)
    _threads = os.environ.get(THREADS_ENV)
    if _threads:
        try:
            nb.set_num_threads(max(1, min(int(_threads), nb.config.NUMBA_NUM_THREADS)))
        except ValueError:
            logger.warning("ignoring non-integer %s=%r", THREADS_ENV, _threads)
else:  # pragma: no cover

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
