"""The comparison factor k(q, p), the Beta function, and two scalar minimizers.

The comparison factor multiplies the upper constant in every basic estimate;
on the diagonal p = q it reduces to p^(1/p) (p*)^(1/p*).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import Exponents

# Below this gap the Beta arguments of the strict formula blow up; the strict
# value converges to the diagonal one, so route there.
_DIAGONAL_GAP = 1e-8


class KqpRegime(Enum):
    DIAGONAL = "diagonal"  # p == q
    STRICT = "strict"      # q > p


@dataclass(frozen=True)
class FactorKqp:
    value: float
    p: float
    q: float
    regime: KqpRegime


def beta(a: float, b: float) -> float:
    """Euler Beta function B(a, b) for a, b > 0, via log-gamma."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"beta needs positive arguments, got ({a}, {b})")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _diagonal_value(p: float) -> float:
    p_star = p / (p - 1.0)
    return p ** (1.0 / p) * p_star ** (1.0 / p_star)


def k_qp(e: Exponents) -> FactorKqp:
    """Comparison factor for 1 < p <= q.

    Strict regime (q > p):
        [ (q - p) / (p B(p/(q-p), p(q-1)/(q-p))) ]^(1/p - 1/q)
    Diagonal regime (q = p): p^(1/p) (p*)^(1/p*), the continuity limit of the
    strict formula as q decreases to p.
    """
    e.require_upper()
    p, q = e.p, e.q
    if q - p < _DIAGONAL_GAP:
        return FactorKqp(_diagonal_value(p), p, q, KqpRegime.DIAGONAL)
    # log space: the Beta value underflows for q near p (huge arguments)
    a = p / (q - p)
    b = p * (q - 1.0) / (q - p)
    log_beta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    log_base = math.log(q - p) - math.log(p) - log_beta
    return FactorKqp(math.exp((1.0 / p - 1.0 / q) * log_base), p, q,
                     KqpRegime.STRICT)


def min_split_gamma(a: float, b: float, p: float) -> tuple[float, float]:
    """Minimize F(g) = g^(1-p) a^p + (1-g)^(1-p) b^p over g in (0, 1).

    Returns (g*, min) = (a/(a+b), (a+b)^p).  The endpoints a = 0 or b = 0
    return g* in {0, 1} with the obvious limit value.
    """
    if a < 0.0 or b < 0.0:
        raise ValueError("a and b must be nonnegative")
    if a + b == 0.0:
        raise ValueError("a + b must be positive")
    if p <= 1.0:
        raise ValueError("p must exceed 1")
    return a / (a + b), (a + b) ** p


def min_split_power(alpha: float, beta_: float, q: float) -> tuple[float, float]:
    """Minimize F(x) = alpha x^q + beta (1-x)^q on [0, 1].

    Returns (x0, min) with x0 = beta^(q*-1) / (alpha^(q*-1) + beta^(q*-1)) and
    min = (alpha^(1-q*) + beta^(1-q*))^(1-q).
    """
    if alpha <= 0.0 or beta_ <= 0.0:
        raise ValueError("alpha and beta must be positive")
    if q <= 1.0:
        raise ValueError("q must exceed 1")
    q_star = q / (q - 1.0)
    wa = alpha ** (q_star - 1.0)
    wb = beta_ ** (q_star - 1.0)
    x0 = wb / (wa + wb)
    return x0, (alpha ** (1.0 - q_star) + beta_ ** (1.0 - q_star)) ** (1.0 - q)
