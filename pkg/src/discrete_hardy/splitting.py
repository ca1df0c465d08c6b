"""Splitting of two-sided boundary problems into one-sided halves.

A cut at (zeta, gamma) distributes the weight at the cut index between a left
and a right family; the left/right one-sided constants give curves whose
crossing certifies a value below the two-sided upper constant, and the same
machinery builds explicit sequences witnessing the lower constant.

The reflecting-case split divides conductances instead of masses; those
families are stored in hat space (v_hat scaled by gamma and 1 - gamma), which
is algebraically exact and stays finite at gamma in {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    BoundaryRule,
    DegenerateError,
    Exponents,
    Sequence,
    WeightedInterval,
    signed_pow,
)

_GAMMA_WIDTH_TOL = 1e-12
_CROSS_REL_TOL = 1e-10
_MAX_BISECT = 200


@dataclass(frozen=True)
class SplitPoint:
    zeta: int
    gamma: float
    b_minus: float
    b_plus: float


@dataclass(frozen=True)
class SplitWeights:
    """Weight family produced by a split.

    Unlike WeightedInterval this may carry a zero entry at the cut slot
    (gamma in {0, 1}); v may be inf there, in which case v_hat is the
    authoritative representation.
    """

    offset: int
    u: np.ndarray
    v: np.ndarray
    v_hat: np.ndarray

    @property
    def right(self) -> int:
        return self.offset + len(self.u) - 1


# ---------------------------------------------------------------------------
# Two-sided Dirichlet (DD) splitting


def dd_split_weights(w: WeightedInterval, zeta: int, gamma: float
                     ) -> tuple[SplitWeights, SplitWeights]:
    """Mass split at an interior cut: the left family keeps (1-gamma) of the
    weight at zeta, the right family starts with the remaining gamma share and
    the rest of u shifted one slot right.

    Left lives on [-M, zeta], right on [zeta+1, N+1].  The right v arrays are
    padded at slot N+1 with a copy of v_N; the one-sided energy on the right
    half never reads that slot.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    z = w.slot(zeta)
    if z in (0, w.size - 1):
        raise ValueError("cut must be interior to the interval")
    u_minus = w.u[: z + 1].copy()
    u_minus[z] *= 1.0 - gamma
    left = SplitWeights(w.offset, u_minus, w.v[: z + 1].copy(),
                        w.v_hat[: z + 1].copy())
    u_plus = np.concatenate(([gamma * w.u[z]], w.u[z + 1:]))
    v_plus = np.append(w.v[z + 1:], w.v[-1])
    vh_plus = np.append(w.v_hat[z + 1:], w.v_hat[-1])
    right = SplitWeights(zeta + 1, u_plus, v_plus, vh_plus)
    return left, right


def dd_split_sequences(x: Sequence, zeta: int) -> tuple[Sequence, Sequence]:
    """Cut a sequence with x_N = 0 into the left copy on [-M, zeta] and the
    right shift on [zeta+1, N+1]."""
    if x.values[-1] != 0.0:
        raise DegenerateError("the two-sided split needs x_N = 0")
    z = zeta - x.offset
    if not 0 < z < x.size - 1:
        raise ValueError("cut must be interior to the interval")
    x_minus = Sequence(x.offset, x.values[: z + 1],
                       left=BoundaryRule.DIRICHLET_ZERO)
    x_plus = Sequence(zeta + 1, x.values[z:])
    return x_minus, x_plus


def _dd_b_minus(w: WeightedInterval, e: Exponents, z: int, gamma: float) -> float:
    # sup over slots k in [0, z]; z is the slot of zeta, z = -1 means empty.
    if z < 0:
        return 0.0
    u_pre = np.cumsum(w.u)
    vh_pre = np.cumsum(w.v_hat)
    k = np.arange(z + 1)
    head = u_pre[z - 1] if z > 0 else 0.0
    usum = head - np.where(k > 0, u_pre[k - 1], 0.0) + (1.0 - gamma) * w.u[z]
    vals = vh_pre[k] ** (1.0 / e.p_star) * usum ** (1.0 / e.q)
    return float(vals.max())


def _dd_b_plus(w: WeightedInterval, e: Exponents, z: int, gamma: float) -> float:
    # sup over slots k in [z+1, L-1]; empty when z = L-1.
    L = w.size
    if z >= L - 1:
        return 0.0
    u_pre = np.cumsum(w.u)
    vh_suf = np.cumsum(w.v_hat[::-1])[::-1]
    k = np.arange(z + 1, L)
    head = u_pre[z] if z >= 0 else 0.0
    u_at_cut = w.u[z] if z >= 0 else 0.0
    usum = u_pre[k - 1] - head + gamma * u_at_cut
    # k - 1 >= z >= 0 except when z = -1 and k = 0 (empty running sum).
    if z < 0:
        usum = np.where(k > 0, u_pre[k - 1], 0.0)
    vals = usum ** (1.0 / e.q) * vh_suf[k] ** (1.0 / e.p_star)
    return float(vals.max())


def dd_b_curves(w: WeightedInterval, e: Exponents, zeta: int, gamma: float
                ) -> tuple[float, float]:
    """One-sided constants of the two split halves as functions of the cut.

    The minus curve is nondecreasing in zeta and nonincreasing in gamma; the
    plus curve moves the other way, and both glue across integer cuts:
    minus(zeta, 0) = minus(zeta+1, 1) and likewise for plus.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    z = w.slot(zeta)
    return _dd_b_minus(w, e, z, gamma), _dd_b_plus(w, e, z, gamma)


def _bisect_gamma(minus, plus) -> tuple[float, float, float]:
    """Find gamma with minus(gamma) = plus(gamma), where plus - minus is
    continuous, increasing, <= 0 at 0 and >= 0 at 1."""
    m0, p0 = minus(0.0), plus(0.0)
    m1, p1 = minus(1.0), plus(1.0)
    scale = max(m0, p0, m1, p1)
    if p0 - m0 > _CROSS_REL_TOL * scale or m1 - p1 > _CROSS_REL_TOL * scale:
        raise DegenerateError("no bracketing cut for the crossing search")
    lo, hi = 0.0, 1.0
    g = 0.5
    for _ in range(_MAX_BISECT):
        g = 0.5 * (lo + hi)
        m, p = minus(g), plus(g)
        if abs(m - p) <= _CROSS_REL_TOL * max(m, p) or hi - lo <= _GAMMA_WIDTH_TOL:
            return g, m, p
        if p < m:
            lo = g
        else:
            hi = g
    return g, minus(g), plus(g)


def dd_find_crossing(w: WeightedInterval, e: Exponents) -> SplitPoint:
    """Cut point where the two one-sided curves meet.

    Scans the cut index at gamma = 0 for the largest index where the plus
    curve still dominates, then bisects gamma one slot further right, where
    the curves bracket a crossing.
    """
    e.require_upper()
    L = w.size
    if L < 2:
        raise DegenerateError("crossing needs at least two points")
    zbar = None
    for z in range(L - 2, -2, -1):  # slots of zeta, down to the -M-1 sentinel
        if _dd_b_plus(w, e, z, 0.0) >= _dd_b_minus(w, e, z, 0.0):
            zbar = z
            break
    if zbar is None:
        raise DegenerateError("no bracketing cut for the crossing search")
    z_cross = zbar + 1
    g, m, p = _bisect_gamma(lambda g: _dd_b_minus(w, e, z_cross, g),
                            lambda g: _dd_b_plus(w, e, z_cross, g))
    return SplitPoint(w.offset + z_cross, g, m, p)


def dd_witness(w: WeightedInterval, e: Exponents, x: int, y: int) -> Sequence:
    """Explicit sequence realizing the two-sided lower expression at (x, y).

    Ramps up along the dual-weight running sum to the left of x, holds flat
    across [x+1, y], and decays along the dual-weight tail sum past y; the
    flat block is then collapsed by one slot so the result lives on [-M, N]
    with x_N = 0.
    """
    i, j = w.slot(x), w.slot(y)
    if i >= j:
        raise ValueError("need x < y")
    vh_pre = np.cumsum(w.v_hat)
    vh_suf = np.cumsum(w.v_hat[::-1])[::-1]
    c = vh_suf[j] / vh_pre[i]
    L = w.size
    xt = np.empty(L + 1)  # slots for indices -M .. N+1
    xt[: i + 1] = c * vh_pre[: i + 1]
    xt[i + 1: j + 1] = vh_suf[j]
    xt[j + 1: L] = vh_suf[j + 1:]
    xt[L] = 0.0
    out = np.concatenate((xt[:j], xt[j + 1:]))  # collapse the flat slot at y
    return Sequence(w.offset, out, left=BoundaryRule.DIRICHLET_ZERO,
                    right=BoundaryRule.FREE)


# ---------------------------------------------------------------------------
# Reflecting (NN) splitting


def nn_split_weights(w: WeightedInterval, e: Exponents, zeta: int, gamma: float
                     ) -> tuple[SplitWeights, SplitWeights]:
    """Conductance split at the cut: in hat space the cut weight divides as
    gamma * v_hat (left) and (1 - gamma) * v_hat (right), exactly equivalent
    to scaling v by gamma^(1-p) resp. (1-gamma)^(1-p).

    Left lives on [-M+1, zeta] with u shifted one slot; right on [zeta, N].
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    z = w.slot(zeta)
    if z < 1:
        raise ValueError("cut must leave at least one point on the left")
    with np.errstate(divide="ignore"):
        v_left_cut = w.v[z] * gamma ** (1.0 - e.p) if gamma > 0.0 else np.inf
        v_right_cut = w.v[z] * (1.0 - gamma) ** (1.0 - e.p) if gamma < 1.0 else np.inf
    u_minus = w.u[:z].copy()
    v_minus = np.append(w.v[1: z], v_left_cut)
    vh_minus = np.append(w.v_hat[1: z], gamma * w.v_hat[z])
    left = SplitWeights(w.offset + 1, u_minus, v_minus, vh_minus)
    u_plus = w.u[z:].copy()
    v_plus = np.append(v_right_cut, w.v[z + 1:])
    vh_plus = np.append((1.0 - gamma) * w.v_hat[z], w.v_hat[z + 1:])
    right = SplitWeights(zeta, u_plus, v_plus, vh_plus)
    return left, right


def nn_split_sequences(x: Sequence, zeta: int, gamma: float
                       ) -> tuple[Sequence, Sequence]:
    """Cut a sequence for the reflecting split; both halves end at the cut in
    the interpolated value (1-gamma) x_{zeta-1} + gamma x_zeta."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    z = zeta - x.offset
    if not 1 <= z <= x.size - 1:
        raise ValueError("cut must leave at least one point on the left")
    interp = (1.0 - gamma) * x.values[z - 1] + gamma * x.values[z]
    x_minus = Sequence(x.offset + 1, np.append(x.values[:z], interp))
    x_plus = Sequence(zeta - 1, np.append(interp, x.values[z:]))
    return x_minus, x_plus


def nn_b_curves(w: WeightedInterval, e: Exponents, zeta: int, gamma: float
                ) -> tuple[float, float]:
    """One-sided constants of the two reflecting halves, in hat space."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    z = w.slot(zeta)
    u_pre = np.cumsum(w.u)
    u_suf = np.cumsum(w.u[::-1])[::-1]
    vh_pre = np.cumsum(w.v_hat)
    if z == 0:
        b_minus = 0.0
    else:
        k = np.arange(z)
        head = vh_pre[z - 1]
        inner = head - vh_pre[k] + gamma * w.v_hat[z]
        b_minus = float((u_pre[k] ** (1.0 / e.q)
                         * inner ** (1.0 / e.p_star)).max())
    k = np.arange(z, w.size)
    inner = vh_pre[k] - vh_pre[z] + (1.0 - gamma) * w.v_hat[z]
    b_plus = float((inner ** (1.0 / e.p_star) * u_suf[k] ** (1.0 / e.q)).max())
    return b_minus, b_plus


def _nn_c_minus(w: WeightedInterval, e: Exponents, z: int, i: int,
                gamma: float) -> float:
    # sum_{k < z} u_k * inner_k^(q-1), inner_k = hat tail of the left split
    # family from max(k, i)+1 through the cut.
    if z < 1:
        return 0.0
    vh_pre = np.cumsum(w.v_hat)
    k = np.arange(z)
    m = np.maximum(k, i)
    head = vh_pre[z - 1]
    inner = np.clip(head - vh_pre[m], 0.0, None) + gamma * w.v_hat[z]
    return float(np.sum(w.u[k] * inner ** (e.q - 1.0)))


def _nn_c_plus(w: WeightedInterval, e: Exponents, z: int, j: int,
               gamma: float) -> float:
    # sum_{k >= z} u_k * inner_k^(q-1), inner_k = hat head of the right split
    # family from the cut through min(k, j).
    vh_pre = np.cumsum(w.v_hat)
    k = np.arange(z, w.size)
    m = np.minimum(k, j)
    inner = (1.0 - gamma) * w.v_hat[z] + np.clip(vh_pre[m] - vh_pre[z], 0.0, None)
    return float(np.sum(w.u[k] * inner ** (e.q - 1.0)))


def nn_find_crossing_C(w: WeightedInterval, e: Exponents, x: int, y: int
                       ) -> SplitPoint:
    """Balance point of the two signed-mass sums used by the reflecting
    witness: the cut (zeta, gamma) where they agree, so the witness has a
    vanishing mean-like constant."""
    i, j = w.slot(x), w.slot(y)
    if i >= j:
        raise ValueError("need x < y")
    zbar = None
    for z in range(i, j + 1):
        if _nn_c_minus(w, e, z, i, 0.0) >= _nn_c_plus(w, e, z, j, 0.0):
            zbar = z - 1
            break
    if zbar is None:
        zbar = j
    g, cm, cp = _bisect_gamma(lambda g: _nn_c_plus(w, e, zbar, j, g),
                              lambda g: _nn_c_minus(w, e, zbar, i, g))
    # minus/plus swapped above because c_minus increases with gamma.
    return SplitPoint(w.offset + zbar, g, cp, cm)


def nn_witness(w: WeightedInterval, e: Exponents, x: int, y: int) -> Sequence:
    """Sequence realizing the reflecting lower expression at (x, y): negative
    hat-tail sums left of the balanced cut, positive hat-head sums right of
    it, so the mean-like constant vanishes by construction."""
    i, j = w.slot(x), w.slot(y)
    cross = nn_find_crossing_C(w, e, x, y)
    z = cross.zeta - w.offset
    g = cross.gamma
    vh_pre = np.cumsum(w.v_hat)
    vals = np.empty(w.size)
    if z >= 1:
        k = np.arange(z)
        m = np.maximum(k, i)
        head = vh_pre[z - 1]
        vals[:z] = -(np.clip(head - vh_pre[m], 0.0, None) + g * w.v_hat[z])
    k = np.arange(z, w.size)
    m = np.minimum(k, j)
    vals[z:] = (1.0 - g) * w.v_hat[z] + np.clip(vh_pre[m] - vh_pre[z], 0.0, None)
    seq = Sequence(w.offset, vals, left=BoundaryRule.NEUMANN_COPY,
                   right=BoundaryRule.FREE)
    resid = float(np.sum(w.u * signed_pow(vals, e.q - 1.0)))
    scale = float(np.sum(w.u) * np.max(np.abs(vals)) ** (e.q - 1.0))
    if abs(resid) > 1e-9 * scale:
        raise DegenerateError("witness mean-zero condition failed")
    return seq
