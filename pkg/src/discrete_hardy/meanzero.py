"""The mean-like constant of the reflecting (NN) regime.

m(x) is the unique root of f(t) = sum u_n sgn(x_n - t)|x_n - t|^(q-1); it is
also the minimizer of F(t) = sum u_n |x_n - t|^q.  For q = 2 it is the
u-weighted mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Exponents, Sequence, WeightedInterval, _check_aligned, signed_pow

_MAX_ITER = 200
_WIDTH_TOL = 1e-14


@dataclass(frozen=True)
class MeanResult:
    m: float
    residual: float
    iterations: int


def f_eval(x: Sequence, w: WeightedInterval, e: Exponents, t: float) -> float:
    """sum u_n sgn(x_n - t)|x_n - t|^(q-1); decreasing in t on [min x, max x]."""
    _check_aligned(x, w)
    return float(np.sum(w.u * signed_pow(x.values - t, e.q - 1.0)))


def _f_prime(x: Sequence, w: WeightedInterval, e: Exponents, t: float) -> float:
    # d/dt of f; only finite (and used) for q >= 2.
    return float(-(e.q - 1.0) * np.sum(w.u * np.abs(x.values - t) ** (e.q - 2.0)))


def solve_m(x: Sequence, w: WeightedInterval, e: Exponents) -> MeanResult:
    """Root of f on [min x, max x].

    q = 2 uses the closed-form weighted mean.  Otherwise bisection on the sign
    of f, with a safeguarded Newton step when q >= 2 (below that f' blows up
    at the data points and plain bisection is the safe choice).  Constant
    sequences return that constant with residual 0.
    """
    _check_aligned(x, w)
    vals = x.values
    lo, hi = float(vals.min()), float(vals.max())
    if lo == hi:
        return MeanResult(lo, 0.0, 0)
    if e.q == 2.0:
        m = float(np.sum(w.u * vals) / np.sum(w.u))
        return MeanResult(m, f_eval(x, w, e, m), 0)

    width_tol = _WIDTH_TOL * (hi - lo)
    use_newton = e.q >= 2.0
    a, b = lo, hi  # f(a) >= 0 >= f(b)
    m = 0.5 * (a + b)
    it = 0
    for it in range(1, _MAX_ITER + 1):
        fm = f_eval(x, w, e, m)
        if fm == 0.0 or b - a <= width_tol:
            break
        if fm > 0.0:
            a = m
        else:
            b = m
        m_next = 0.5 * (a + b)
        if use_newton:
            fp = _f_prime(x, w, e, m)
            if fp < 0.0:
                cand = m - fm / fp
                if a < cand < b:
                    m_next = cand
        m = m_next
    return MeanResult(m, f_eval(x, w, e, m), it)


def check_min_property(x: Sequence, w: WeightedInterval, e: Exponents,
                       m: float, eps: float) -> bool:
    """True iff F(m) <= F(m - eps) and F(m) <= F(m + eps)."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")

    def big_f(t: float) -> float:
        return float(np.sum(w.u * np.abs(x.values - t) ** e.q))

    fm = big_f(m)
    return fm <= big_f(m - eps) and fm <= big_f(m + eps)
