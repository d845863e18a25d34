"""Special functions for the Dirichlet opinion algebra.

lgamma, digamma (psi) and trigamma (psi') for positive real arguments,
plus the log multinomial beta normalizer built on lgamma.  Arguments are
validated at this boundary: non-finite or nonpositive input raises
DomainError rather than propagating NaN into a training loss.

Each function accepts a float or an ndarray of any shape and returns a
matching float/ndarray.  The kernel build is chosen by EVIFUSE_BACKEND
(see evifuse.backend); both builds are importable for cross-checks.
"""

import numpy as np

from . import _special_numpy
from .backend import ACTIVE
from .errors import DomainError

if ACTIVE == "numba":
    from . import _special_numba as _impl
else:
    _impl = _special_numpy

IMPLEMENTATIONS = {"numpy": _special_numpy}
if ACTIVE == "numba":
    IMPLEMENTATIONS["numba"] = _impl


def _checked(x, name):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: argument must be finite")
    if not np.all(arr > 0.0):
        raise DomainError(f"{name}: argument must be > 0")
    return arr


def lgamma(x):
    """ln Gamma(x) for x > 0."""
    arr = _checked(x, "lgamma")
    if arr.ndim == 0:
        return _impl.lgamma_scalar(float(arr))
    return _impl.lgamma_array(arr)


def digamma(x):
    """psi(x) = d/dx ln Gamma(x) for x > 0."""
    arr = _checked(x, "digamma")
    if arr.ndim == 0:
        return _impl.digamma_scalar(float(arr))
    return _impl.digamma_array(arr)


def trigamma(x):
    """psi'(x) = d/dx psi(x) for x > 0."""
    arr = _checked(x, "trigamma")
    if arr.ndim == 0:
        return _impl.trigamma_scalar(float(arr))
    return _impl.trigamma_array(arr)


def ln_multinomial_beta(alpha):
    """ln B(alpha) = sum_k ln Gamma(alpha_k) - ln Gamma(sum_k alpha_k).

    alpha: 1-D vector (returns float) or 2-D batch of row vectors
    (returns one value per row).  Every entry must be positive and each
    row must have at least two entries.
    """
    arr = _checked(alpha, "ln_multinomial_beta")
    if arr.ndim == 0 or arr.shape[-1] < 2:
        raise DomainError("ln_multinomial_beta: need at least 2 components")
    if arr.ndim == 1:
        return float(np.sum(_impl.lgamma_array(arr)) - _impl.lgamma_scalar(float(arr.sum())))
    if arr.ndim == 2:
        return np.sum(_impl.lgamma_array(arr), axis=-1) - _impl.lgamma_array(arr.sum(axis=-1))
    raise DomainError("ln_multinomial_beta: expected a vector or a batch of vectors")
