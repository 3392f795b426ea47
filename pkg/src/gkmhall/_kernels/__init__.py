"""Hot enumeration/elimination kernels with two interchangeable backends.

The numba backend compiles the inner loops; the numpy backend expresses
the same operations as vectorized array arithmetic (mod-p work is done in
float64, which is exact here because all values stay far below 2^53).
Selection: environment variable GKMHALL_BACKEND = numba | numpy | auto
(default auto: numba when importable, else numpy).  Both backends expose
the same functions and produce identical results; see
benchmarks/bench_backends.py for a timing comparison.
"""

import os

_impl = None


def backend_name():
    choice = os.environ.get("GKMHALL_BACKEND", "auto").lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError("GKMHALL_BACKEND must be auto, numba or numpy")
    if choice == "numba" or choice == "auto":
        try:
            import numba  # noqa: F401
            return "numba"
        except ImportError:
            if choice == "numba":
                raise
    return "numpy"


def impl():
    global _impl
    name = backend_name()
    if _impl is not None and _impl.NAME == name:
        return _impl
    if name == "numba":
        from . import numba_impl as _impl_mod
    else:
        from . import numpy_impl as _impl_mod
    _impl = _impl_mod
    return _impl


def get_impl(name):
    """Fetch a backend by name, bypassing the environment switch."""
    if name == "numba":
        from . import numba_impl
        return numba_impl
    if name == "numpy":
        from . import numpy_impl
        return numpy_impl
    raise ValueError("unknown backend %r" % (name,))
