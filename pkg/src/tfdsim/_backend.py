"""Kernel backend selection.

The hot inner loops (matrix-exponential series, master-equation RK4) exist in
two interchangeable implementations: numba-compiled (``_kernels_numba``) and
pure numpy (``_kernels_numpy``).  Selection happens once at import time from
the environment variable ``TFDSIM_BACKEND``:

* ``auto`` (default) -- numba if it imports, numpy otherwise
* ``numba``          -- require numba, raise if unavailable
* ``numpy``          -- force the pure-numpy fallback

Both backends produce results that agree to floating-point roundoff;
``benchmarks/bench_backends.py`` compares their speed.
"""

import os

ENV_VAR = "TFDSIM_BACKEND"


def _select():
    choice = os.environ.get(ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{ENV_VAR} must be one of 'auto', 'numba', 'numpy'; got {choice!r}"
        )
    if choice == "numpy":
        from . import _kernels_numpy
        return _kernels_numpy, "numpy"
    try:
        from . import _kernels_numba
        return _kernels_numba, "numba"
    except ImportError:
        if choice == "numba":
            raise
        from . import _kernels_numpy
        return _kernels_numpy, "numpy"


kernels, BACKEND = _select()


def active_backend():
    """Name of the kernel backend selected at import time."""
    return BACKEND
