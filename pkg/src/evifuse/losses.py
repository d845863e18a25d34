"""Training objectives for evidential fusion, with analytic gradients.

Single-sample forms (alpha is a K-vector, y a one-hot K-vector):

    ace(alpha, y)    = sum_j y_j (psi(S) - psi(alpha_j)),   S = sum alpha
    alpha~           = y + (1 - y) * alpha
    kl(alpha~)       = KL[ Dir(alpha~) || Dir(1,...,1) ]
    lambda_t         = min(1, t / 10)
    ece(alpha, y, t) = ace + lambda_t * kl(alpha~)
    con(opinions)    = 1/(M-1) * sum_{i != j} TV(p_i, p_j) (1-u_i)(1-u_j)
    tl               = ece(fused) + sum_stages ece(stage) + con
    total            = (1-gamma) * tl + gamma * (ce_V + ce_C)

The conflict sum runs over ordered pairs, so each unordered pair counts
twice; with a single opinion it is defined as 0.  Batch variants reduce
by the mean over samples, summing in index order for reproducibility.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .special import digamma, lgamma, trigamma

KL_ANNEAL_EPOCHS = 10.0


def _check_alpha(alpha):
    arr = np.asarray(alpha, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("alpha entries must be positive and finite")
    return arr


def _check_one_hot(y, k):
    arr = np.asarray(y, dtype=np.float64)
    if arr.shape != (k,):
        raise ValidationError(f"label must have length {k}")
    if not np.all((arr == 0.0) | (arr == 1.0)) or arr.sum() != 1.0:
        raise ValidationError("label must be one-hot")
    return arr


def one_hot(index, k):
    y = np.zeros(k)
    y[index] = 1.0
    return y


def annealing_coefficient(t):
    """KL ramp min(1, t/10); t is the 0-based epoch index."""
    if t < 0:
        raise ValidationError("epoch index must be >= 0")
    return min(1.0, t / KL_ANNEAL_EPOCHS)


def adjusted_cross_entropy(alpha, y):
    """Expected cross entropy under Dir(alpha): sum_j y_j (psi(S) - psi(alpha_j))."""
    a = _check_alpha(alpha)
    yv = _check_one_hot(y, a.size)
    j = int(np.argmax(yv))
    return digamma(float(a.sum())) - digamma(float(a[j]))


def misleading_alpha(alpha, y):
    """Remove the true class's evidence: alpha~ = y + (1 - y) * alpha."""
    a = _check_alpha(alpha)
    yv = _check_one_hot(y, a.size)
    return yv + (1.0 - yv) * a


def kl_to_uniform(alpha_tilde):
    """KL[ Dir(alpha~) || Dir(1,...,1) ]; nonnegative, 0 iff alpha~ = 1."""
    a = _check_alpha(alpha_tilde)
    if a.ndim != 1 or a.size < 2:
        raise ValidationError("alpha~ must be a vector of length >= 2")
    s = float(a.sum())
    k = a.size
    return float(
        lgamma(s)
        - lgamma(float(k))
        - np.sum(lgamma(a))
        + np.sum((a - 1.0) * (digamma(a) - digamma(s)))
    )


def evidential_ce(alpha, y, t):
    """ece = ace + lambda_t * KL(alpha~ against uniform)."""
    lam = annealing_coefficient(t)
    value = adjusted_cross_entropy(alpha, y)
    if lam > 0.0:
        value += lam * kl_to_uniform(misleading_alpha(alpha, y))
    return value


def grad_evidential_ce(alpha, y, t):
    """d ece / d alpha_j, closed form.

    d ace / d alpha_j = psi'(S) - y_j psi'(alpha_j)
    d KL  / d alpha_j = (1 - y_j) [ (a~_j - 1) psi'(a~_j) - (S~ - K) psi'(S~) ]
    """
    a = _check_alpha(alpha)
    yv = _check_one_hot(y, a.size)
    s = float(a.sum())
    grad = trigamma(s) - yv * trigamma(a)
    lam = annealing_coefficient(t)
    if lam > 0.0:
        at = yv + (1.0 - yv) * a
        st = float(at.sum())
        kl_grad = (at - 1.0) * trigamma(at) - (st - a.size) * trigamma(st)
        grad = grad + lam * (1.0 - yv) * kl_grad
    return grad


def conflict_loss(opinions):
    """Certainty-weighted total-variation disagreement across opinions.

    Ordered-pair sum divided by (M - 1) where M is the number of opinions
    participating in fusion.  A single opinion has no pairs; defined as 0.
    """
    ops = list(opinions)
    m = len(ops)
    if m == 0:
        raise ValidationError("conflict_loss needs at least one opinion")
    if m == 1:
        return 0.0
    probs = [op.alpha / op.strength for op in ops]
    certs = [1.0 - op.uncertainty for op in ops]
    total = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            tv = 0.5 * float(np.sum(np.abs(probs[i] - probs[j])))
            total += 2.0 * tv * certs[i] * certs[j]
    return total / (m - 1)


def trusted_loss(fused_alpha, stage_opinions, y, t):
    """ece(fused) + sum of stage ece + conflict across stage opinions."""
    value = evidential_ce(fused_alpha, y, t)
    for op in stage_opinions:
        value += evidential_ce(op.alpha, y, t)
    return value + conflict_loss(stage_opinions)


def total_loss(l_tl, l_ce_v, l_ce_c, gamma):
    """(1 - gamma) * tl + gamma * (ce_V + ce_C)."""
    if not 0.0 < gamma < 1.0:
        raise ValidationError("gamma must lie strictly inside (0, 1)")
    return (1.0 - gamma) * l_tl + gamma * (l_ce_v + l_ce_c)


@dataclass(frozen=True)
class LossBreakdown:
    """Per-batch values of every loss term; the training-log row."""

    l_ace: float
    l_kl: float
    l_ece: float
    l_con: float
    l_tl: float
    l_ce_v: float
    l_ce_c: float
    l_total: float
    lambda_t: float
    gamma: float

    CSV_HEADER = "epoch,lambda_t,gamma,l_ace,l_kl,l_ece,l_con,l_tl,l_ce_v,l_ce_c,l_total"

    def csv_row(self, epoch):
        vals = (
            self.lambda_t, self.gamma, self.l_ace, self.l_kl, self.l_ece,
            self.l_con, self.l_tl, self.l_ce_v, self.l_ce_c, self.l_total,
        )
        return str(epoch) + "," + ",".join(repr(v) for v in vals)


# Batch forms.  Labels are integer class indices; every reduction is the
# mean over the batch in index order.

def ace_batch(alpha, y_idx):
    s = alpha.sum(axis=1)
    picked = alpha[np.arange(alpha.shape[0]), y_idx]
    return digamma(s) - digamma(picked)


def misleading_alpha_batch(alpha, y_idx):
    at = alpha.copy()
    at[np.arange(alpha.shape[0]), y_idx] = 1.0
    return at


def kl_to_uniform_batch(alpha_tilde):
    k = alpha_tilde.shape[1]
    st = alpha_tilde.sum(axis=1)
    return (
        lgamma(st)
        - lgamma(float(k))
        - lgamma(alpha_tilde).sum(axis=1)
        + np.sum((alpha_tilde - 1.0) * (digamma(alpha_tilde) - digamma(st)[:, None]), axis=1)
    )


def ece_batch(alpha, y_idx, lam):
    per = ace_batch(alpha, y_idx)
    if lam > 0.0:
        per = per + lam * kl_to_uniform_batch(misleading_alpha_batch(alpha, y_idx))
    return per


def grad_ece_batch(alpha, y_idx, lam):
    """d mean-ece / d alpha, summed contributions per sample (no 1/B)."""
    b, k = alpha.shape
    rows = np.arange(b)
    onehot = np.zeros_like(alpha)
    onehot[rows, y_idx] = 1.0
    s = alpha.sum(axis=1)
    grad = trigamma(s)[:, None] - onehot * trigamma(alpha)
    if lam > 0.0:
        at = misleading_alpha_batch(alpha, y_idx)
        st = at.sum(axis=1)
        kl_grad = (at - 1.0) * trigamma(at) - ((st - k) * trigamma(st))[:, None]
        grad = grad + lam * (1.0 - onehot) * kl_grad
    return grad


def softmax(logits):
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def cross_entropy_batch(logits, y_idx):
    shifted = logits - logits.max(axis=1, keepdims=True)
    logz = np.log(np.exp(shifted).sum(axis=1))
    return logz - shifted[np.arange(logits.shape[0]), y_idx]


def conflict_batch(stage_alphas):
    """Per-sample conflict loss over a list of (B, K) stage alpha arrays.

    Returns (per_sample (B,), grads list of (B, K)) so the training path
    gets the backward pass for free.
    """
    m = len(stage_alphas)
    b, k = stage_alphas[0].shape
    if m < 2:
        return np.zeros(b), [np.zeros((b, k)) for _ in range(m)]
    s = [a.sum(axis=1) for a in stage_alphas]
    p = [a / si[:, None] for a, si in zip(stage_alphas, s)]
    cert = [1.0 - k / si for si in s]
    per = np.zeros(b)
    grads = [np.zeros((b, k)) for _ in range(m)]
    scale = 2.0 / (m - 1)
    for i in range(m):
        for j in range(i + 1, m):
            diff = p[i] - p[j]
            sign = np.sign(diff)
            tv = 0.5 * np.abs(diff).sum(axis=1)
            per += scale * tv * cert[i] * cert[j]
            # d tv / d alpha_i = (sign_k - sum_m sign_m p_m) / (2 S_i)
            dot_i = np.sum(sign * p[i], axis=1)
            dot_j = np.sum(sign * p[j], axis=1)
            dtv_i = (sign - dot_i[:, None]) / (2.0 * s[i][:, None])
            dtv_j = (-sign + dot_j[:, None]) / (2.0 * s[j][:, None])
            dc_i = (k / (s[i] ** 2))[:, None]
            dc_j = (k / (s[j] ** 2))[:, None]
            cc = (cert[i] * cert[j])[:, None]
            grads[i] += scale * (dtv_i * cc + (tv * cert[j])[:, None] * dc_i)
            grads[j] += scale * (dtv_j * cc + (tv * cert[i])[:, None] * dc_j)
    return per, grads
