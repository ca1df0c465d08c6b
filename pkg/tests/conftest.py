"""Shared fixtures and numerical helpers for the test suite."""

import numpy as np

from discrete_hardy import Exponents, WeightedInterval
from discrete_hardy.meanzero import solve_m
from discrete_hardy.splitting import (
    dd_split_sequences,
    dd_split_weights,
    nn_split_sequences,
    nn_split_weights,
)

EXPONENT_PAIRS = [(2.0, 2.0), (1.5, 1.5), (1.5, 3.0), (2.0, 4.0)]


def random_interval(rng, e, min_len=2, max_len=12, offset_span=5):
    L = int(rng.integers(min_len, max_len + 1))
    offset = int(rng.integers(-offset_span, offset_span + 1))
    u = rng.uniform(0.2, 3.0, L)
    v = rng.uniform(0.2, 3.0, L)
    return WeightedInterval.from_weights(offset, u, v, e)


def _safe_energy(v, d, p):
    # v may carry inf at a split cut where the matching diff is 0
    d = np.abs(d) ** p
    keep = d != 0.0
    return float(np.sum(v[keep] * d[keep]))


def dd_identity_gaps(w, e, x, zeta, gamma):
    """Relative gaps of the two-sided Dirichlet split identities.

    Returns (q-sum gap, p-energy gap) for a sequence with x_N = 0 cut at
    (zeta, gamma); both should vanish.
    """
    lw, rw = dd_split_weights(w, zeta, gamma)
    xm, xp = dd_split_sequences(x, zeta)

    total_q = float(np.sum(w.u * np.abs(x.values) ** e.q))
    left_q = float(np.sum(lw.u * np.abs(xm.values) ** e.q))
    right_q = float(np.sum(rw.u * np.abs(xp.values) ** e.q))

    d = x.values - np.append(0.0, x.values[:-1])
    total_p = float(np.sum(w.v * np.abs(d) ** e.p))
    dm = xm.values - np.append(0.0, xm.values[:-1])
    left_p = _safe_energy(lw.v, dm, e.p)
    dp = xp.values[:-1] - xp.values[1:]
    right_p = _safe_energy(rw.v[: len(dp)], dp, e.p)

    scale_q = max(total_q, 1e-300)
    scale_p = max(total_p, 1e-300)
    return (abs(total_q - left_q - right_q) / scale_q,
            abs(total_p - left_p - right_p) / scale_p)


def nn_identity_gaps(w, e, x, zeta, gamma):
    """Relative gaps of the reflecting split identities (q-sum about the
    mean-like constant, and the p-energy split)."""
    lw, rw = nn_split_weights(w, e, zeta, gamma)
    xm, xp = nn_split_sequences(x, zeta, gamma)
    m = solve_m(x, w, e).m

    total_q = float(np.sum(w.u * np.abs(x.values - m) ** e.q))
    left_q = float(np.sum(lw.u * np.abs(xm.values[:-1] - m) ** e.q))
    right_q = float(np.sum(rw.u * np.abs(xp.values[1:] - m) ** e.q))

    d = np.diff(x.values)
    total_p = float(np.sum(w.v[1:] * np.abs(d) ** e.p))
    left_p = _safe_energy(lw.v, np.diff(xm.values), e.p)
    right_p = _safe_energy(rw.v, np.diff(xp.values), e.p)

    scale_q = max(total_q, 1e-300)
    scale_p = max(total_p, 1e-300)
    return (abs(total_q - left_q - right_q) / scale_q,
            abs(total_p - left_p - right_p) / scale_p)
