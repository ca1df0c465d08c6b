"""Variational estimation of the optimal constant.

The optimal constant of each regime is the supremum of a Rayleigh-type ratio
(weighted q-norm over weighted p-energy), so every admissible sequence gives a
certified lower bound.  The estimator combines smoothed projected ascent from
several seeds with fixed-point sweeps on the first-order condition; at
p = q = 2 the exact value comes from a symmetric tridiagonal eigenproblem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .bounds import dd_lower_scan, dn_scan, nd_scan, nn_lower_scan
from .core import (
    BoundaryRule,
    Case,
    DegenerateError,
    Exponents,
    Sequence,
    WeightedInterval,
    _check_aligned,
    backward_energy,
    forward_energy,
    lq_norm,
    signed_pow,
)
from .meanzero import solve_m
from .splitting import dd_witness, nn_witness


@dataclass(frozen=True)
class EstimateConfig:
    restarts: int = 3
    max_iters: int = 10_000
    seed: int = 0
    eps_schedule: tuple[float, ...] = (1e-3, 1e-5, 1e-7, 1e-10)
    stage_iters: int = 40
    sweeps: int = 600
    tol: float = 1e-12


@dataclass(frozen=True)
class EstimateResult:
    a_hat: float
    maximizer: Sequence
    restarts: int
    converged: bool
    oracle_value: float | None = None


_RULES = {
    Case.ND: (BoundaryRule.FREE, BoundaryRule.DIRICHLET_ZERO),
    Case.DN: (BoundaryRule.DIRICHLET_ZERO, BoundaryRule.FREE),
    Case.DD: (BoundaryRule.DIRICHLET_ZERO, BoundaryRule.FREE),
    Case.NN: (BoundaryRule.NEUMANN_COPY, BoundaryRule.FREE),
}


def ratio(case: Case, x: Sequence, w: WeightedInterval, e: Exponents) -> float:
    """Weighted q-norm over difference p-energy, with the regime's boundary
    padding; for the reflecting regime the norm is centered at the mean-like
    constant of x."""
    _check_aligned(x, w)
    x = x.with_boundaries(*_RULES[case])
    if case is Case.ND:
        num = lq_norm(x, w, e)
        den = forward_energy(x, w, e)
    elif case is Case.DN:
        num = lq_norm(x, w, e)
        den = backward_energy(x, w, e)
    elif case is Case.DD:
        if x.values[-1] != 0.0:
            raise ValueError("the double-Dirichlet ratio needs x_N = 0")
        num = lq_norm(x, w, e)
        den = backward_energy(x, w, e)
    elif case is Case.NN:
        m = solve_m(x, w, e).m
        num = lq_norm(x, w, e, shift=m)
        den = backward_energy(x, w, e)
    else:
        raise ValueError(f"unknown case {case!r}")
    if den == 0.0:
        raise DegenerateError("zero difference energy")
    return num / den


# ---------------------------------------------------------------------------
# Optimizer internals.  The free vector z holds all slots, except for DD where
# the last slot is pinned to zero and dropped.


def _free_len(case: Case, L: int) -> int:
    return L - 1 if case is Case.DD else L


def _embed(case: Case, z: np.ndarray) -> np.ndarray:
    return np.append(z, 0.0) if case is Case.DD else z


def _to_seq(case: Case, offset: int, z: np.ndarray) -> Sequence:
    return Sequence(offset, _embed(case, z), *_RULES[case])


def _diffs(case: Case, x: np.ndarray) -> np.ndarray:
    if case is Case.ND:
        return x - np.append(x[1:], 0.0)
    if case is Case.NN:
        return x - np.append(x[0], x[:-1])
    return x - np.append(0.0, x[:-1])  # DN, DD (x already ends in 0)


def _ratio_z(case: Case, z: np.ndarray, w: WeightedInterval,
             e: Exponents) -> float:
    try:
        return ratio(case, _to_seq(case, w.offset, z), w, e)
    except DegenerateError:
        return -np.inf


def _normalize(case: Case, z: np.ndarray, w: WeightedInterval,
               e: Exponents) -> np.ndarray | None:
    d = _diffs(case, _embed(case, z))
    den = np.sum(w.v * np.abs(d) ** e.p) ** (1.0 / e.p)
    if den == 0.0 or not np.isfinite(den):
        return None
    return z / den


def _log_ratio_grad(case: Case, z: np.ndarray, w: WeightedInterval,
                    e: Exponents, eps: float) -> np.ndarray:
    """Gradient of log(num/den) with |t| smoothed as sqrt(t^2 + eps^2).

    For NN the center m(x) is recomputed but held fixed in the gradient; the
    minimizing property of m makes that the exact composite gradient.
    """
    x = _embed(case, z)
    shift = solve_m(Sequence(w.offset, x), w, e).m if case is Case.NN else 0.0
    t = x - shift
    sq_n = t * t + eps * eps
    num_terms = w.u * sq_n ** (0.5 * e.q)
    g_num = w.u * sq_n ** (0.5 * e.q - 1.0) * t

    d = _diffs(case, x)
    sq_d = d * d + eps * eps
    den_terms = w.v * sq_d ** (0.5 * e.p)
    c = w.v * sq_d ** (0.5 * e.p - 1.0) * d
    if case is Case.ND:
        g_den = c - np.append(0.0, c[:-1])
    else:
        g_den = c - np.append(c[1:], 0.0)  # NN: d[0] = 0, so c[0] = 0 exactly
    grad = g_num / np.sum(num_terms) - g_den / np.sum(den_terms)
    if case is Case.DD:
        grad = grad[:-1]
    return grad


def _ascend(case: Case, z0: np.ndarray, w: WeightedInterval, e: Exponents,
            config: EstimateConfig) -> tuple[np.ndarray, float, bool, int]:
    z = _normalize(case, z0, w, e)
    if z is None:
        raise DegenerateError("degenerate seed")
    best = _ratio_z(case, z, w, e)
    iters = 0
    hit_tol = False
    for eps in config.eps_schedule:
        step = 1.0
        for _ in range(config.stage_iters):
            if iters >= config.max_iters:
                break
            iters += 1
            g = _log_ratio_grad(case, z, w, e, eps)
            gn = float(np.linalg.norm(g))
            if gn == 0.0 or not np.isfinite(gn):
                break
            s = step
            accepted = False
            for _ in range(40):
                cand = _normalize(case, z + (s / gn) * g, w, e)
                if cand is not None:
                    r = _ratio_z(case, cand, w, e)
                    if r > best:
                        rel = (r - best) / best if best > 0 else np.inf
                        z, best = cand, r
                        step = min(2.0 * s, 1e3)
                        accepted = True
                        if rel < config.tol:
                            hit_tol = True
                        break
                s *= 0.5
            if not accepted or hit_tol:
                break
        if iters >= config.max_iters:
            break
    return z, best, hit_tol, iters


# ---------------------------------------------------------------------------
# Fixed-point sweeps on the first-order condition.  Each sweep maps the
# current iterate through the characteristic equation at unit eigenvalue and
# renormalizes; iterates stay feasible, so the ratio stays a certified bound.


def _suffix(a: np.ndarray) -> np.ndarray:
    return np.cumsum(a[::-1])[::-1]


def _dd_balance(S: np.ndarray, v: np.ndarray, e: Exponents) -> np.ndarray:
    # Solve sum_n psi_p^{-1}((S_n + c)/v_n) = 0 for c; the sum is increasing
    # in c, nonnegative at c = 0 and nonpositive at c = -max(S).
    r = 1.0 / (e.p - 1.0)
    if e.p == 2.0:
        c = -float(np.sum(S / v) / np.sum(1.0 / v))
        return (S + c) / v
    lo, hi = -float(S.max()), 0.0
    for _ in range(80):
        c = 0.5 * (lo + hi)
        if np.sum(signed_pow((S + c) / v, r)) > 0.0:
            hi = c
        else:
            lo = c
    c = 0.5 * (lo + hi)
    return signed_pow((S + c) / v, r)


def _sweep(case: Case, z: np.ndarray, w: WeightedInterval,
           e: Exponents) -> np.ndarray | None:
    r = 1.0 / (e.p - 1.0)
    x = _embed(case, z)
    if case is Case.ND:
        T = np.cumsum(w.u * signed_pow(x, e.q - 1.0))
        d = signed_pow(T / w.v, r)
        out = _suffix(d)
    elif case is Case.DN:
        T = _suffix(w.u * signed_pow(x, e.q - 1.0))
        d = signed_pow(T / w.v, r)
        out = np.cumsum(d)
    elif case is Case.DD:
        a = w.u * signed_pow(x, e.q - 1.0)
        a[-1] = 0.0
        d = _dd_balance(_suffix(a), w.v, e)
        out = np.cumsum(d)
        out = out[:-1]  # the last entry balances to zero by construction
    else:  # NN
        m = solve_m(Sequence(w.offset, x), w, e).m
        T = _suffix(w.u * signed_pow(x - m, e.q - 1.0))
        d = signed_pow(T[1:] / w.v[1:], r)
        out = np.append(0.0, np.cumsum(d))
    return _normalize(case, out, w, e)


def _polish(case: Case, z: np.ndarray, best: float, w: WeightedInterval,
            e: Exponents, config: EstimateConfig
            ) -> tuple[np.ndarray, float]:
    prev = best
    stable = 0
    cur = z
    for _ in range(config.sweeps):
        nxt = _sweep(case, cur, w, e)
        if nxt is None:
            break
        r = _ratio_z(case, nxt, w, e)
        if not np.isfinite(r):
            break
        cur = nxt
        if r > best:
            z, best = nxt, r
        if abs(r - prev) <= 1e-14 * max(abs(r), 1.0):
            stable += 1
            if stable >= 3:
                break
        else:
            stable = 0
        prev = r
    return z, best


def _witness_seed(case: Case, w: WeightedInterval,
                  e: Exponents) -> np.ndarray | None:
    vh_pre = np.cumsum(w.v_hat)
    vh_suf = _suffix(w.v_hat)
    if case is Case.ND:
        _, n = nd_scan(w, e)
        i = w.slot(n)
        return vh_suf[np.maximum(np.arange(w.size), i)]
    if case is Case.DN:
        _, n = dn_scan(w, e)
        i = w.slot(n)
        return vh_pre[np.minimum(np.arange(w.size), i)]
    if case is Case.DD:
        _, (x, y) = dd_lower_scan(w, e)
        return dd_witness(w, e, x, y).values[:-1]
    _, (x, y) = nn_lower_scan(w, e)
    try:
        return nn_witness(w, e, x, y).values
    except DegenerateError:
        return None


def _canonical_seed(case: Case, w: WeightedInterval) -> np.ndarray:
    vh_pre = np.cumsum(w.v_hat)
    vh_suf = _suffix(w.v_hat)
    if case is Case.ND:
        return vh_suf.copy()
    if case is Case.DN:
        return vh_pre.copy()
    if case is Case.DD:
        return np.minimum(vh_pre, vh_suf)[:-1]
    return vh_pre.copy()


def estimate_A(case: Case, w: WeightedInterval, e: Exponents,
               config: EstimateConfig | None = None,
               with_oracle: bool = False) -> EstimateResult:
    """Best ratio found by multi-seed smoothed ascent plus fixed-point sweeps.

    Seeds: the lower-constant witness at its attaining index/pair, a canonical
    running-sum seed, and ``config.restarts`` random seeds drawn
    deterministically from (config.seed, restart index).  The returned a_hat
    is the ratio re-evaluated at the maximizer, hence a certified lower bound
    on the optimal constant.
    """
    if config is None:
        config = EstimateConfig()
    n_free = _free_len(case, w.size)
    if n_free < 1:
        raise DegenerateError("no free variables for this case")
    seeds: list[np.ndarray] = []
    wit = _witness_seed(case, w, e)
    if wit is not None:
        seeds.append(np.asarray(wit, dtype=float))
    seeds.append(_canonical_seed(case, w))
    for k in range(config.restarts):
        rng = np.random.default_rng([config.seed, k])
        seeds.append(rng.standard_normal(n_free))

    best_z = None
    best_r = -np.inf
    converged = False
    for z0 in seeds:
        try:
            z, r, hit_tol, _ = _ascend(case, z0, w, e, config)
        except DegenerateError:
            continue
        z, r = _polish(case, z, r, w, e, config)
        converged = converged or hit_tol
        if r > best_r:
            best_z, best_r = z, r
    if best_z is None or not np.isfinite(best_r):
        raise DegenerateError("all seeds degenerate")
    maximizer = _to_seq(case, w.offset, best_z)
    a_hat = ratio(case, maximizer, w, e)
    oracle = None
    if with_oracle:
        if not (e.p == 2.0 and e.q == 2.0):
            raise ValueError("the eigen oracle needs p = q = 2")
        oracle = eigen_oracle(case, w)
    return EstimateResult(a_hat, maximizer, config.restarts, converged, oracle)


# ---------------------------------------------------------------------------
# p = q = 2 eigen oracle


def _tridiag(case: Case, w: WeightedInterval
             ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stiffness diagonal/off-diagonal and mass diagonal of the quadratic
    difference energy under the case's boundary conditions."""
    v, u = w.v, w.u
    L = w.size
    if case is Case.ND:
        diag = v.copy()
        diag[1:] += v[:-1]
        off = -v[:-1]
        mass = u
    elif case is Case.DN:
        diag = v.copy()
        diag[:-1] += v[1:]
        off = -v[1:]
        mass = u
    elif case is Case.DD:
        if L < 2:
            raise DegenerateError("double-Dirichlet needs at least two points")
        diag = v[:-1] + v[1:]
        off = -v[1:-1]
        mass = u[:-1]
    elif case is Case.NN:
        if L < 2:
            raise DegenerateError("the reflecting case needs at least two points")
        diag = np.zeros(L)
        diag[1:] += v[1:]
        diag[:-1] += v[1:]
        off = -v[1:]
        mass = u
    else:
        raise ValueError(f"unknown case {case!r}")
    return diag, off, mass


def eigen_oracle(case: Case, w: WeightedInterval) -> float:
    """Exact optimal constant at p = q = 2: A = lambda^(-1/2) for the first
    nontrivial eigenvalue of the stiffness/mass pencil (second smallest in the
    reflecting case, smallest otherwise)."""
    diag, off, mass = _tridiag(case, w)
    s = np.sqrt(mass)
    d = diag / mass
    if len(d) == 1:
        lam = float(d[0])
    else:
        o = off / (s[:-1] * s[1:])
        k = 1 if case is Case.NN else 0
        lam = float(eigh_tridiagonal(d, o, eigvals_only=True,
                                     select="i", select_range=(k, k))[0])
    if lam <= 0.0:
        raise DegenerateError("nonpositive leading eigenvalue")
    return lam ** -0.5


def characteristic_residual(case: Case, x: Sequence, lam: float,
                            w: WeightedInterval, e: Exponents) -> float:
    """Max-norm residual of the discrete Euler-Lagrange equation at x.

    Only defined on the diagonal p = q, where the extremal problem is an
    eigenvalue problem with lam = a_hat^(-p); a true extremal has residual 0.
    """
    if e.p != e.q:
        raise ValueError("the characteristic equation needs p = q")
    _check_aligned(x, w)
    xv = x.values
    if case is Case.ND:
        d = xv - np.append(xv[1:], 0.0)
        T = w.v * signed_pow(d, e.p - 1.0)
        res = np.append(0.0, T[:-1]) - T + lam * w.u * signed_pow(xv, e.q - 1.0)
        return float(np.max(np.abs(res)))
    if case is Case.DD and xv[-1] != 0.0:
        raise ValueError("the double-Dirichlet residual needs x_N = 0")
    if case is Case.NN:
        d = xv - np.append(xv[0], xv[:-1])
        shift = solve_m(x, w, e).m
    else:
        d = xv - np.append(0.0, xv[:-1])
        shift = 0.0
    T = w.v * signed_pow(d, e.p - 1.0)
    res = np.append(T[1:], 0.0) - T + lam * w.u * signed_pow(xv - shift, e.q - 1.0)
    if case is Case.DD:
        res = res[:-1]  # the slot at N carries the constraint multiplier
    return float(np.max(np.abs(res)))
