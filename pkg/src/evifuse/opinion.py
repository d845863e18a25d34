"""Dirichlet opinions and trusted fusion.

An opinion over K classes is stored as its Dirichlet parameters alpha
(alpha_k = evidence_k + 1) plus a base rate.  Belief mass, uncertainty
mass, strength and projected probability are derived:

    S   = sum_k alpha_k
    b_k = (alpha_k - 1) / S
    u   = K / S
    p_k = alpha_k / S

so u + sum_k b_k = 1 holds by construction.  Two opinions fuse by
averaging alpha; the equivalent belief/uncertainty formulas

    b_k = (b1_k u2 + b2_k u1) / (u1 + u2)
    u   = 2 u1 u2 / (u1 + u2)

are kept as a cross-check (see _routes_agree).  Pairwise fusion is
commutative but not associative, so chained fusion is defined as a left
fold in the listed opinion order.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError
from .special import ln_multinomial_beta

SIMPLEX_TOL = 1e-9
ROUTE_TOL = 1e-12


def _as_vector(v, name):
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise ValidationError(f"{name} must be a 1-D vector with at least 2 entries")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} must be finite")
    return arr


@dataclass(frozen=True)
class DirichletOpinion:
    """Immutable subjective opinion in Dirichlet parameterization."""

    alpha: np.ndarray
    base_rate: np.ndarray
    tag: str = ""

    def __post_init__(self):
        alpha = _as_vector(self.alpha, "alpha")
        if not np.all(alpha > 0.0):
            raise DomainError("alpha entries must be > 0")
        base = _as_vector(self.base_rate, "base_rate")
        if base.shape != alpha.shape:
            raise ValidationError("base_rate must match alpha in length")
        if abs(base.sum() - 1.0) > SIMPLEX_TOL or np.any(base < 0.0):
            raise ValidationError("base_rate must be a probability vector")
        alpha = alpha.copy()
        base = base.copy()
        alpha.setflags(write=False)
        base.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "base_rate", base)

    @property
    def n_classes(self):
        return self.alpha.size

    @property
    def strength(self):
        return float(self.alpha.sum())

    @property
    def belief(self):
        return (self.alpha - 1.0) / self.strength

    @property
    def uncertainty(self):
        return self.n_classes / self.strength

    def with_tag(self, tag):
        return DirichletOpinion(self.alpha, self.base_rate, tag)


def uniform_base_rate(k):
    return np.full(k, 1.0 / k)


def opinion_from_evidence(evidence, base_rate=None, tag=""):
    """Build the opinion with alpha = evidence + 1.

    Evidence entries must be finite and nonnegative; the base rate
    defaults to uniform.
    """
    e = _as_vector(evidence, "evidence")
    if np.any(e < 0.0):
        raise DomainError("evidence must be nonnegative")
    if base_rate is None:
        base_rate = uniform_base_rate(e.size)
    return DirichletOpinion(e + 1.0, base_rate, tag)


def projected_probability(op):
    """Dirichlet mean p_k = alpha_k / S; the opinion's point prediction."""
    return op.alpha / op.strength


def dirichlet_log_density(p, alpha):
    """Log density of the Dirichlet(alpha) distribution at p.

    p must lie strictly inside the simplex (every p_i > 0 and the entries
    sum to 1 within 1e-9); boundary or off-simplex points raise
    DomainError because the density there is 0 and its log would poison
    downstream arithmetic with -inf.
    """
    pv = _as_vector(p, "p")
    av = _as_vector(alpha, "alpha")
    if pv.shape != av.shape:
        raise ValidationError("p and alpha must have the same length")
    if np.any(pv <= 0.0) or abs(pv.sum() - 1.0) > SIMPLEX_TOL:
        raise DomainError("p is not strictly inside the probability simplex")
    return float(-ln_multinomial_beta(av) + np.sum((av - 1.0) * np.log(pv)))


class OpinionSet:
    """Ordered collection of same-K opinions, in fusion chain order."""

    def __init__(self, opinions):
        ops = list(opinions)
        if not ops:
            raise ValidationError("OpinionSet needs at least one opinion")
        k = ops[0].n_classes
        for op in ops:
            if op.n_classes != k:
                raise ValidationError(
                    f"all opinions must share K; got {op.n_classes} and {k}"
                )
        self._ops = tuple(ops)

    def __len__(self):
        return len(self._ops)

    def __iter__(self):
        return iter(self._ops)

    def __getitem__(self, i):
        return self._ops[i]

    @property
    def n_classes(self):
        return self._ops[0].n_classes

    @property
    def tags(self):
        return tuple(op.tag for op in self._ops)


def _routes_agree(m1, m2, fused):
    # Eq-level consistency: belief/uncertainty computed from the input
    # opinions' (b, u) must match the values derived from averaged alpha.
    u1, u2 = m1.uncertainty, m2.uncertainty
    b_route = (m1.belief * u2 + m2.belief * u1) / (u1 + u2)
    u_route = 2.0 * u1 * u2 / (u1 + u2)
    return (
        np.max(np.abs(b_route - fused.belief)) <= ROUTE_TOL
        and abs(u_route - fused.uncertainty) <= ROUTE_TOL
    )


def fuse_pair(m1, m2, tag=""):
    """Fuse two opinions: averaged alpha, belief/uncertainty rederived."""
    if m1.n_classes != m2.n_classes:
        raise ValidationError("cannot fuse opinions with different K")
    fused = DirichletOpinion((m1.alpha + m2.alpha) / 2.0, m1.base_rate, tag)
    assert _routes_agree(m1, m2, fused), "fusion route mismatch beyond 1e-12"
    return fused


def fuse_chain(ops, tag="fused"):
    """Left fold of fuse_pair over the set order: ((M1 + M2) + M3) ...

    Pairwise fusion is not associative, so this order is part of the
    contract.  The fold halves earlier opinions' weight at every step;
    see fuse_balanced for the order-free alternative.
    """
    if isinstance(ops, OpinionSet):
        members = list(ops)
    else:
        members = list(OpinionSet(ops))
    acc = members[0]
    for op in members[1:]:
        acc = fuse_pair(acc, op)
    return acc.with_tag(tag)


def fuse_balanced(ops, tag="fused"):
    """Order-independent fusion: alpha averaged uniformly over all opinions."""
    if isinstance(ops, OpinionSet):
        members = list(ops)
    else:
        members = list(OpinionSet(ops))
    alpha = np.mean([op.alpha for op in members], axis=0)
    return DirichletOpinion(alpha, members[0].base_rate, tag)


def fold_weights(count, mode):
    """Per-opinion alpha weights implied by a fusion mode.

    left_fold: the fold above gives the last opinion weight 1/2, the one
    before 1/4, and so on, with the first two sharing the smallest weight.
    balanced: uniform 1/count.
    """
    if count < 1:
        raise ValidationError("need at least one opinion")
    if mode == "balanced":
        return np.full(count, 1.0 / count)
    if mode == "left_fold":
        if count == 1:
            return np.ones(1)
        w = np.array([2.0 ** -(count - m + 1) for m in range(1, count + 1)])
        w[0] = 2.0 ** -(count - 1)
        return w
    raise ValidationError(f"unknown fusion mode {mode!r}")


def opinion_to_json(op):
    """Serialize to the flat schema: alpha, base_rate, tag.

    Belief, uncertainty and strength are derived quantities and are never
    serialized, which makes inconsistent stored states impossible.
    """
    return json.dumps(
        {
            "alpha": [float(a) for a in op.alpha],
            "base_rate": [float(a) for a in op.base_rate],
            "tag": op.tag,
        }
    )


def opinion_from_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed opinion JSON at byte {exc.pos}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "alpha" not in doc:
        raise ValidationError("opinion JSON must be an object with an 'alpha' field")
    alpha = np.asarray(doc["alpha"], dtype=np.float64)
    base = doc.get("base_rate")
    base_rate = None if base is None else np.asarray(base, dtype=np.float64)
    tag = doc.get("tag", "")
    if base_rate is None:
        base_rate = uniform_base_rate(alpha.size)
    return DirichletOpinion(alpha, base_rate, str(tag))
