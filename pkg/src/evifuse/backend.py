"""Kernel backend selection.

The special-function kernels exist twice: a numba @njit build and a pure
numpy build with identical semantics.  EVIFUSE_BACKEND picks which one the
package uses:

    auto   -> numba when importable, numpy otherwise (default)
    numba  -> require numba, fail loudly if missing
    numpy  -> force the pure-numpy path

The flag is read once at import time; both implementations stay importable
for cross-checking and benchmarks regardless of the selection.
"""

import os

_VALID = ("auto", "numba", "numpy")


def _probe_numba():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def select_backend():
    """Resolve the EVIFUSE_BACKEND env flag to 'numba' or 'numpy'."""
    flag = os.environ.get("EVIFUSE_BACKEND", "auto").strip().lower()
    if flag not in _VALID:
        raise ValueError(
            f"EVIFUSE_BACKEND must be one of {_VALID}, got {flag!r}"
        )
    if flag == "numpy":
        return "numpy"
    if flag == "numba":
        if not _probe_numba():
            raise ImportError("EVIFUSE_BACKEND=numba but numba is not importable")
        return "numba"
    return "numba" if _probe_numba() else "numpy"


ACTIVE = select_backend()
