"""Shared constants for the log-gamma family kernels.

All three functions use the same scheme: upward recurrence until the
argument reaches SHIFT_THRESHOLD, then an asymptotic series in 1/x**2.
Series are truncated where the first omitted term is below 1e-13 at the
threshold, which keeps absolute error comfortably inside the contracts
(lgamma 1e-12, digamma 1e-10 absolute, trigamma 1e-8 relative).
"""

SHIFT_THRESHOLD = 6.0

HALF_LN_TWO_PI = 0.9189385332046727417803297364056176

# ln Gamma(x) ~ (x-1/2) ln x - x + ln(2 pi)/2 + (1/x) * P(1/x^2)
LGAMMA_TAIL = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)

# psi(x) ~ ln x - 1/(2x) - z * P(z), z = 1/x^2
DIGAMMA_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

# psi'(x) ~ 1/x + 1/(2x^2) + (1/x^3) * P(z), z = 1/x^2
TRIGAMMA_TAIL = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)
