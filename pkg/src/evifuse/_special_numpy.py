"""Pure-numpy build of the log-gamma family kernels.

Vectorized equivalent of the numba kernels: elements below the shift
threshold are walked upward with boolean masks, then the asymptotic
series is applied to the whole array at once.  The per-element sequence
of floating-point operations matches the scalar kernels.
"""

import numpy as np

from ._special_coeffs import (
    DIGAMMA_TAIL,
    HALF_LN_TWO_PI,
    LGAMMA_TAIL,
    SHIFT_THRESHOLD,
    TRIGAMMA_TAIL,
)


def _poly(coeffs, z):
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def lgamma_array(x):
    xs = np.array(x, dtype=np.float64, copy=True)
    acc = np.zeros_like(xs)
    while True:
        low = xs < SHIFT_THRESHOLD
        if not low.any():
            break
        acc[low] += np.log(xs[low])
        xs[low] += 1.0
    z = 1.0 / (xs * xs)
    tail = _poly(LGAMMA_TAIL, z) / xs
    return (xs - 0.5) * np.log(xs) - xs + HALF_LN_TWO_PI + tail - acc


def digamma_array(x):
    xs = np.array(x, dtype=np.float64, copy=True)
    acc = np.zeros_like(xs)
    while True:
        low = xs < SHIFT_THRESHOLD
        if not low.any():
            break
        acc[low] += 1.0 / xs[low]
        xs[low] += 1.0
    z = 1.0 / (xs * xs)
    return np.log(xs) - 0.5 / xs - z * _poly(DIGAMMA_TAIL, z) - acc


def trigamma_array(x):
    xs = np.array(x, dtype=np.float64, copy=True)
    acc = np.zeros_like(xs)
    while True:
        low = xs < SHIFT_THRESHOLD
        if not low.any():
            break
        acc[low] += 1.0 / (xs[low] * xs[low])
        xs[low] += 1.0
    t = 1.0 / xs
    z = t * t
    return t + 0.5 * z + t * z * _poly(TRIGAMMA_TAIL, z) + acc


def lgamma_scalar(x):
    return float(lgamma_array(np.atleast_1d(np.float64(x)))[0])


def digamma_scalar(x):
    return float(digamma_array(np.atleast_1d(np.float64(x)))[0])


def trigamma_scalar(x):
    return float(trigamma_array(np.atleast_1d(np.float64(x)))[0])
