"""Three canonical weight families on [1, N] and their reference values.

* telescoping: u = 1 with dual weights chosen so their tail sums have an
  exact closed form; the one-sided constant tends to 1 as N grows.
* power law: u_n = n^(-alpha), v_n = n^beta, with a boundedness threshold in
  alpha and a growth-exponent classifier for the two-sided constant.
* geometric: u_n = r^n, v_n = b r^n, the reflecting-boundary birth-death
  chain, with closed forms for both reflecting constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import dd_upper_scan
from .core import Exponents, WeightedInterval


def telescoping_family(e: Exponents, N: int) -> WeightedInterval:
    """u = 1 on [1, N] and v_hat_n = n^(-p*/q) - (n+1)^(-p*/q).

    The dual weights are passed through exactly so that their suffix sums
    telescope to n^(-p*/q) - (N+1)^(-p*/q) in floating point as well.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    a = e.p_star / e.q
    n = np.arange(1, N + 2, dtype=float)
    pows = n ** -a
    v_hat = pows[:-1] - pows[1:]
    v = v_hat ** (1.0 - e.p)
    return WeightedInterval.from_weights(1, np.ones(N), v, e, v_hat=v_hat)


def telescoping_suffix(e: Exponents, n: int, N: int) -> float:
    """Closed form of the dual-weight tail sum_{j=n}^{N} v_hat_j."""
    a = e.p_star / e.q
    return float(n) ** -a - float(N + 1) ** -a


def power_family(alpha: float, beta: float, e: Exponents,
                 N: int) -> WeightedInterval:
    """u_n = n^(-alpha), v_n = n^beta on [1, N]."""
    if N < 2:
        raise ValueError("N must be at least 2")
    n = np.arange(1, N + 1, dtype=float)
    return WeightedInterval.from_weights(1, n ** -alpha, n ** beta, e)


def power_threshold(beta: float, e: Exponents) -> float:
    """Boundedness threshold in alpha: 1 + (q/p)(p - 1 - beta).

    At beta = p - 1 the two-sided constant stays bounded iff alpha exceeds
    the threshold strictly; otherwise iff alpha >= threshold.
    """
    return 1.0 + (e.q / e.p) * (e.p - 1.0 - beta)


@dataclass(frozen=True)
class PowerClassification:
    label: str                      # "bounded" or "divergent"
    growth: float                   # extended-scale supremum ratio minus one
    b_values: tuple[float, ...]     # upper constant at each truncation
    n_list: tuple[int, ...]


def _subgrid_slots(L: int, dense: int = 64, coarse: int = 512) -> np.ndarray:
    grid = np.unique(np.concatenate([
        np.arange(min(L, dense)),
        np.geomspace(1, L, num=min(L, coarse)).astype(int) - 1,
        [L - 1],
    ]))
    return grid[(grid >= 0) & (grid < L)]


def power_upper_constant(alpha: float, beta: float, e: Exponents,
                         N: int) -> float:
    """Two-sided upper constant of the power family at truncation N.

    For large N the pair supremum is scanned over a dense head plus a
    geometric candidate grid; the power-law objective is smooth along the
    grid, so the restricted scan is an accurate certified lower bound.
    """
    w = power_family(alpha, beta, e, N)
    if w.size <= 2048:
        return dd_upper_scan(w, e)[0]
    slots = _subgrid_slots(w.size)
    return dd_upper_scan(w, e, x_slots=slots, y_slots=slots)[0]


# The pair supremum of the power family can peak at astronomically large
# indices (the critical-weight bounded cases have interior maxima near
# exp(1/|alpha - threshold|)), so truncation growth rates cannot separate the
# regimes at any array-backed size.  The classifier therefore extends the
# partial and tail sums of n^(-s) beyond an exactly-summed anchor with the
# Euler-Maclaurin expansion and compares the pair supremum at two far
# ceilings; tail truncation errors at the anchor are O(anchor^(-s-3)).

_ANCHOR = 1_000_000
_CEILING_FAR = 1e240
_GROWTH_MARGIN = 0.02


class _PowerSums:
    """Partial and tail sums of n^(-s): exact cumulative sums up to the
    anchor, Euler-Maclaurin continuation beyond it."""

    def __init__(self, s: float, anchor: int = _ANCHOR):
        self.s = s
        self.anchor = anchor
        self._exact = np.cumsum(np.arange(1, anchor + 1, dtype=float) ** -s)

    def _em_increment(self, t: float) -> float:
        # sum_{anchor < n <= t} n^(-s), t >= anchor
        s, a = self.s, float(self.anchor)
        if s == 1.0:
            body = math.log(t / a)
        else:
            body = (t ** (1.0 - s) - a ** (1.0 - s)) / (1.0 - s)
        return (body + 0.5 * (t ** -s - a ** -s)
                - (s / 12.0) * (t ** (-s - 1.0) - a ** (-s - 1.0)))

    def partial(self, t: float) -> float:
        """sum_{n <= t}; exact below the anchor."""
        t = float(t)  # python floats underflow silently in **
        if t < 1.0:
            return 0.0
        if t <= self.anchor:
            return float(self._exact[int(t) - 1])
        return float(self._exact[-1]) + self._em_increment(t)

    def tail(self, t: float) -> float:
        """sum_{n > t}; infinite when s <= 1."""
        t = float(t)
        if self.s <= 1.0:
            return math.inf
        s, a = self.s, float(self.anchor)
        tail_anchor = (a ** (1.0 - s) / (s - 1.0) + 0.5 * a ** -s
                       - (s / 12.0) * a ** (-s - 1.0))
        if t <= self.anchor:
            return (float(self._exact[-1]) - self.partial(t)) + tail_anchor
        return (t ** (1.0 - s) / (s - 1.0) + 0.5 * t ** -s
                - (s / 12.0) * t ** (-s - 1.0))

    def range_sum(self, x: float, y: float) -> float:
        """sum_{x <= n <= y}; uses tails when they converge so that huge
        nearly-equal partials never cancel."""
        if self.s > 1.0:
            return self.tail(x - 1.0) - self.tail(y)
        return self.partial(y) - self.partial(x - 1.0)


def _power_ceilings(alpha: float, beta: float, e: Exponents) -> tuple[float, float]:
    # keep t**(1-alpha) and t**(1-s) inside double range at the far ceiling
    s = beta / (e.p - 1.0)
    scale = max(1.0, abs(1.0 - alpha), abs(1.0 - s))
    far = min(_CEILING_FAR, 10.0 ** (290.0 / scale))
    return math.sqrt(far), far


def _extended_pair_sup(alpha: float, beta: float, e: Exponents,
                       ceiling: float) -> float:
    """Two-sided upper expression of the power family on [1, ceiling] with
    the far end open, maximized over a logarithmic candidate grid."""
    s = beta / (e.p - 1.0)  # dual-weight decay exponent
    us = _PowerSums(alpha)
    vs = _PowerSums(s)
    cands = np.unique(np.concatenate([
        np.geomspace(1, _ANCHOR, 60).astype(int),
        np.exp(np.linspace(math.log(_ANCHOR), math.log(ceiling), 80)),
    ]))
    cands = cands[cands <= ceiling]
    r = -e.q / e.p_star
    best = 0.0
    grid = [float(t) for t in cands]
    prefixes = [vs.partial(t) for t in grid]
    tails = [vs.tail(t - 1.0) for t in grid]
    for i, x in enumerate(grid):
        for j in range(i + 1, len(grid)):
            y = grid[j]
            usum = us.range_sum(x, y - 1.0)
            if usum <= 0.0:
                continue
            bracket = prefixes[i] ** r
            if math.isfinite(tails[j]) and tails[j] > 0.0:
                bracket += tails[j] ** r
            val = usum ** (1.0 / e.q) * bracket ** (-1.0 / e.q)
            if val > best:
                best = val
    return best


def classify_power_family(alpha: float, beta: float, e: Exponents,
                          n_list: tuple[int, ...] = (1_000, 10_000, 100_000),
                          ) -> PowerClassification:
    """Bounded/divergent classification of the two-sided constant.

    Divergent means the extended-scale pair supremum still grows between the
    near and far ceilings; bounded means it has saturated.  The truncated
    constants at ``n_list`` are reported alongside as diagnostics.
    """
    b_vals = tuple(power_upper_constant(alpha, beta, e, N) for N in n_list)
    c_near, c_far = _power_ceilings(alpha, beta, e)
    near = _extended_pair_sup(alpha, beta, e, c_near)
    far = _extended_pair_sup(alpha, beta, e, c_far)
    growth = far / near - 1.0
    label = "divergent" if growth > _GROWTH_MARGIN else "bounded"
    return PowerClassification(label, growth, b_vals, tuple(n_list))


def geometric_family(r: float, b: float, e: Exponents,
                     N: int) -> WeightedInterval:
    """u_n = r^n, v_n = b r^n on [1, N] with 0 < r < 1, b > 0."""
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    if b <= 0.0:
        raise ValueError("b must be positive")
    if N < 2:
        raise ValueError("N must be at least 2")
    u = r ** np.arange(1, N + 1, dtype=float)
    return WeightedInterval.from_weights(1, u, b * u, e)


def geometric_nn_closed(r: float, b: float, e: Exponents,
                        N: int) -> tuple[float, float]:
    """Closed forms of the reflecting pair expressions at (x, y) = (1, N).

    Evaluating the geometric sums at the extreme pair gives, with
    rho = r^(1-p*),

        upper = b^(-1/p) (rho-1)^(-1/p*)
                [ (rho^(N+1) - rho^2) / (r^(-p*/q) + r^(-N p*/q)) ]^(1/p*)
        lower = b^(-1/p) (rho-1)^(-1/p*) (rho^(N+1) - rho^2)^(1/p*)
                (r^(1-q*) + r^(N(1-q*)))^(-1/q*)

    The full pair supremum may sit at an interior pair for larger N, so these
    are exact values of the pair expressions at (1, N), not the suprema.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    if b <= 0.0:
        raise ValueError("b must be positive")
    rho = r ** (1.0 - e.p_star)
    common = b ** (-1.0 / e.p) * (rho - 1.0) ** (-1.0 / e.p_star)
    num = rho ** (N + 1) - rho ** 2
    upper = common * (num / (r ** (-e.p_star / e.q)
                             + r ** (-N * e.p_star / e.q))) ** (1.0 / e.p_star)
    lower = (common * num ** (1.0 / e.p_star)
             * (r ** (1.0 - e.q_star)
                + r ** (N * (1.0 - e.q_star))) ** (-1.0 / e.q_star))
    return lower, upper
