"""The six two-sided constants and the min-type comparison constant.

All suprema are computed exactly from prefix/suffix sums.  The one-index
constants (ND, DN) are O(L); the pair constants (DD, NN, min-type) are an
exhaustive O(L^2) scan.  Ties resolve to the lexicographically smallest
index or pair so reports are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Case, Exponents, WeightedInterval
from .special import k_qp


@dataclass(frozen=True)
class BoundsReport:
    case: Case
    p: float
    q: float
    b_lower: float
    b_upper: float
    k_factor: float
    opic_b: float | None = None
    argmax_lower: tuple[int, ...] = ()
    argmax_upper: tuple[int, ...] = ()


def _prefix(a: np.ndarray) -> np.ndarray:
    return np.cumsum(a)


def _suffix(a: np.ndarray) -> np.ndarray:
    return np.cumsum(a[::-1])[::-1]


def nd_scan(w: WeightedInterval, e: Exponents) -> tuple[float, int]:
    """sup_n (prefix u)^(1/q) (suffix v_hat)^(1/p*) and its attaining index."""
    vals = _prefix(w.u) ** (1.0 / e.q) * _suffix(w.v_hat) ** (1.0 / e.p_star)
    i = int(np.argmax(vals))
    return float(vals[i]), w.offset + i


def dn_scan(w: WeightedInterval, e: Exponents) -> tuple[float, int]:
    """sup_n (prefix v_hat)^(1/p*) (suffix u)^(1/q) and its attaining index."""
    vals = _prefix(w.v_hat) ** (1.0 / e.p_star) * _suffix(w.u) ** (1.0 / e.q)
    i = int(np.argmax(vals))
    return float(vals[i]), w.offset + i


def b_nd(w: WeightedInterval, e: Exponents) -> float:
    return nd_scan(w, e)[0]


def b_dn(w: WeightedInterval, e: Exponents) -> float:
    return dn_scan(w, e)[0]


def _pair_sums(w: WeightedInterval):
    u_pre = _prefix(w.u)            # sum_{-M}^{n}
    u_suf = _suffix(w.u)            # sum_{n}^{N}
    vh_pre = _prefix(w.v_hat)
    vh_suf = _suffix(w.v_hat)
    return u_pre, u_suf, vh_pre, vh_suf


def _candidate_slots(size: int, slots) -> np.ndarray:
    if slots is None:
        return np.arange(size)
    out = np.unique(np.asarray(slots, dtype=int))
    if out.size == 0 or out[0] < 0 or out[-1] >= size:
        raise ValueError("candidate slots out of range")
    return out


def _pair_scan(w: WeightedInterval, row_values, x_slots=None, y_slots=None):
    """Maximize a pair functional over x < y.

    ``row_values(i, js)`` returns the objective for the fixed left slot ``i``
    against an array of right slots ``js``.  Restricting to candidate slot
    subsets gives a certified lower bound on the supremum (used only for the
    large-L weight-family classification; the default scans every pair).
    """
    L = w.size
    if L < 2:
        raise ValueError("pair suprema need an interval with at least 2 points")
    xs = _candidate_slots(L, x_slots)
    ys = _candidate_slots(L, y_slots)
    best = -np.inf
    best_pair = (w.offset, w.offset + 1)
    for i in xs:
        js = ys[ys > i]
        if js.size == 0:
            continue
        vals = row_values(i, js)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best = float(vals[k])
            best_pair = (w.offset + int(i), w.offset + int(js[k]))
    return best, best_pair


def dd_lower_scan(w: WeightedInterval, e: Exponents, x_slots=None, y_slots=None):
    """sup over x < y of (sum_{x}^{y-1} u)^(1/q)
    [ (prefix v_hat at x)^(1-p) + (suffix v_hat at y)^(1-p) ]^(-1/p)."""
    u_pre, _, vh_pre, vh_suf = _pair_sums(w)

    def row(i, js):
        usum = u_pre[js - 1] - (u_pre[i - 1] if i > 0 else 0.0)
        bracket = vh_pre[i] ** (1.0 - e.p) + vh_suf[js] ** (1.0 - e.p)
        return usum ** (1.0 / e.q) * bracket ** (-1.0 / e.p)

    return _pair_scan(w, row, x_slots, y_slots)


def dd_upper_scan(w: WeightedInterval, e: Exponents, x_slots=None, y_slots=None):
    """Same scan with bracket exponents -q/p* inside and -1/q outside."""
    e.require_upper()
    u_pre, _, vh_pre, vh_suf = _pair_sums(w)
    r = -e.q / e.p_star

    def row(i, js):
        usum = u_pre[js - 1] - (u_pre[i - 1] if i > 0 else 0.0)
        bracket = vh_pre[i] ** r + vh_suf[js] ** r
        return usum ** (1.0 / e.q) * bracket ** (-1.0 / e.q)

    return _pair_scan(w, row, x_slots, y_slots)


def nn_lower_scan(w: WeightedInterval, e: Exponents, x_slots=None, y_slots=None):
    """sup over x < y of (sum_{x+1}^{y} v_hat)^(1/p*)
    [ (prefix u at x)^(1-q*) + (suffix u at y)^(1-q*) ]^(-1/q*)."""
    u_pre, u_suf, vh_pre, _ = _pair_sums(w)

    def row(i, js):
        vsum = vh_pre[js] - vh_pre[i]
        bracket = u_pre[i] ** (1.0 - e.q_star) + u_suf[js] ** (1.0 - e.q_star)
        return vsum ** (1.0 / e.p_star) * bracket ** (-1.0 / e.q_star)

    return _pair_scan(w, row, x_slots, y_slots)


def nn_upper_scan(w: WeightedInterval, e: Exponents, x_slots=None, y_slots=None):
    """Same scan with bracket exponents -p*/q inside and -1/p* outside."""
    e.require_upper()
    u_pre, u_suf, vh_pre, _ = _pair_sums(w)
    r = -e.p_star / e.q

    def row(i, js):
        vsum = vh_pre[js] - vh_pre[i]
        bracket = u_pre[i] ** r + u_suf[js] ** r
        return vsum ** (1.0 / e.p_star) * bracket ** (-1.0 / e.p_star)

    return _pair_scan(w, row, x_slots, y_slots)


def opic_scan(w: WeightedInterval, e: Exponents, x_slots=None, y_slots=None):
    """sup over x < y of (sum_{x}^{y-1} u)^(1/q)
    min( prefix v_hat at x, suffix v_hat at y )^(1/p*)."""
    u_pre, _, vh_pre, vh_suf = _pair_sums(w)

    def row(i, js):
        usum = u_pre[js - 1] - (u_pre[i - 1] if i > 0 else 0.0)
        m = np.minimum(vh_pre[i], vh_suf[js])
        return usum ** (1.0 / e.q) * m ** (1.0 / e.p_star)

    return _pair_scan(w, row, x_slots, y_slots)


def b_dd_lower(w: WeightedInterval, e: Exponents) -> float:
    return dd_lower_scan(w, e)[0]


def b_dd_upper(w: WeightedInterval, e: Exponents) -> float:
    return dd_upper_scan(w, e)[0]


def b_nn_lower(w: WeightedInterval, e: Exponents) -> float:
    return nn_lower_scan(w, e)[0]


def b_nn_upper(w: WeightedInterval, e: Exponents) -> float:
    return nn_upper_scan(w, e)[0]


def b_opic(w: WeightedInterval, e: Exponents) -> float:
    return opic_scan(w, e)[0]


def bounds_report(case: Case, w: WeightedInterval, e: Exponents) -> BoundsReport:
    """Lower and upper constants for one boundary regime, with argmax witnesses."""
    e.require_upper()
    k = k_qp(e).value
    if case is Case.ND:
        val, n = nd_scan(w, e)
        return BoundsReport(case, e.p, e.q, val, val, k,
                            argmax_lower=(n,), argmax_upper=(n,))
    if case is Case.DN:
        val, n = dn_scan(w, e)
        return BoundsReport(case, e.p, e.q, val, val, k,
                            argmax_lower=(n,), argmax_upper=(n,))
    if case is Case.DD:
        lo, plo = dd_lower_scan(w, e)
        hi, phi = dd_upper_scan(w, e)
        opic, _ = opic_scan(w, e)
        return BoundsReport(case, e.p, e.q, lo, hi, k, opic_b=opic,
                            argmax_lower=plo, argmax_upper=phi)
    if case is Case.NN:
        lo, plo = nn_lower_scan(w, e)
        hi, phi = nn_upper_scan(w, e)
        return BoundsReport(case, e.p, e.q, lo, hi, k,
                            argmax_lower=plo, argmax_upper=phi)
    raise ValueError(f"unknown case {case!r}")
