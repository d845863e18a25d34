"""Numba @njit build of the log-gamma family kernels.

Scalar kernels plus flat-array loops around them.  Importing this module
requires numba; callers go through evifuse.special, which falls back to
the numpy build when numba is unavailable or disabled.
"""

import math

import numpy as np
from numba import njit

from ._special_coeffs import (
    DIGAMMA_TAIL,
    HALF_LN_TWO_PI,
    LGAMMA_TAIL,
    SHIFT_THRESHOLD,
    TRIGAMMA_TAIL,
)

_LG = LGAMMA_TAIL
_DG = DIGAMMA_TAIL
_TG = TRIGAMMA_TAIL


@njit(cache=True)
def lgamma_scalar(x):
    acc = 0.0
    while x < SHIFT_THRESHOLD:
        acc += math.log(x)
        x += 1.0
    z = 1.0 / (x * x)
    p = _LG[6]
    p = p * z + _LG[5]
    p = p * z + _LG[4]
    p = p * z + _LG[3]
    p = p * z + _LG[2]
    p = p * z + _LG[1]
    p = p * z + _LG[0]
    return (x - 0.5) * math.log(x) - x + HALF_LN_TWO_PI + p / x - acc


@njit(cache=True)
def digamma_scalar(x):
    acc = 0.0
    while x < SHIFT_THRESHOLD:
        acc += 1.0 / x
        x += 1.0
    z = 1.0 / (x * x)
    p = _DG[6]
    p = p * z + _DG[5]
    p = p * z + _DG[4]
    p = p * z + _DG[3]
    p = p * z + _DG[2]
    p = p * z + _DG[1]
    p = p * z + _DG[0]
    return math.log(x) - 0.5 / x - z * p - acc


@njit(cache=True)
def trigamma_scalar(x):
    acc = 0.0
    while x < SHIFT_THRESHOLD:
        acc += 1.0 / (x * x)
        x += 1.0
    t = 1.0 / x
    z = t * t
    p = _TG[6]
    p = p * z + _TG[5]
    p = p * z + _TG[4]
    p = p * z + _TG[3]
    p = p * z + _TG[2]
    p = p * z + _TG[1]
    p = p * z + _TG[0]
    return t + 0.5 * z + t * z * p + acc


@njit(cache=True)
def _lgamma_flat(out, x):
    for i in range(x.size):
        out[i] = lgamma_scalar(x[i])


@njit(cache=True)
def _digamma_flat(out, x):
    for i in range(x.size):
        out[i] = digamma_scalar(x[i])


@njit(cache=True)
def _trigamma_flat(out, x):
    for i in range(x.size):
        out[i] = trigamma_scalar(x[i])


def lgamma_array(x):
    flat = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty_like(flat)
    _lgamma_flat(out, flat)
    return out.reshape(np.shape(x))


def digamma_array(x):
    flat = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty_like(flat)
    _digamma_flat(out, flat)
    return out.reshape(np.shape(x))


def trigamma_array(x):
    flat = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty_like(flat)
    _trigamma_flat(out, flat)
    return out.reshape(np.shape(x))
