"""Data model for weighted discrete intervals and the basic norm/energy operations.

Everything lives on a finite discrete interval ``[-M, N]``.  Public APIs speak
in interval indices ``n`` (which may be negative); the translation to array
slots happens in exactly one place, :meth:`WeightedInterval.slot`, to keep
off-by-one bugs contained.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class HardyError(Exception):
    """Base class for all library errors."""


class BoundaryError(HardyError):
    """A sequence access needed boundary padding that was not declared."""


class DegenerateError(HardyError):
    """A computation hit a degenerate input (zero energy, failed bracketing)."""


class Case(str, Enum):
    """Boundary regime of the inequality."""

    ND = "nd"  # free left, sequence vanishes past the right endpoint
    DN = "dn"  # sequence vanishes past the left endpoint, free right
    DD = "dd"  # vanishes past both endpoints
    NN = "nn"  # reflecting ends, norm taken about the mean-like constant


class BoundaryRule(Enum):
    DIRICHLET_ZERO = "dirichlet"  # out-of-range access returns 0
    NEUMANN_COPY = "neumann"      # out-of-range access copies the edge value
    FREE = "free"                 # out-of-range access is an error


@dataclass(frozen=True)
class Exponents:
    """The exponent pair (p, q) with conjugates, 1 < p and 1 < q.

    Upper estimates additionally require p <= q; call :meth:`require_upper`
    before using them.
    """

    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 1.0 and np.isfinite(self.p)):
            raise ValueError(f"p must be a finite real > 1, got {self.p}")
        if not (self.q > 1.0 and np.isfinite(self.q)):
            raise ValueError(f"q must be a finite real > 1, got {self.q}")

    @property
    def p_star(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def q_star(self) -> float:
        return self.q / (self.q - 1.0)

    @property
    def is_diagonal(self) -> bool:
        return self.p == self.q

    def require_upper(self) -> None:
        """Upper-estimate formulas are only valid for p <= q."""
        if self.p > self.q:
            raise ValueError(f"upper estimates need p <= q, got p={self.p}, q={self.q}")


def _as_positive_array(a, name: str) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-d array")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError(f"{name} must be finite and strictly positive")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class WeightedInterval:
    """Weights u, v on [-M, N] together with the dual weights v_hat = v^(1-p*).

    ``offset`` is -M; slot ``i`` of each array holds the weight at index
    ``offset + i``.
    """

    offset: int
    u: np.ndarray
    v: np.ndarray
    v_hat: np.ndarray

    @classmethod
    def from_weights(cls, offset: int, u, v, e: Exponents,
                     v_hat=None) -> "WeightedInterval":
        """Build an interval, deriving v_hat from v unless given explicitly.

        Passing a precomputed ``v_hat`` is useful when it has an exact closed
        form (telescoping families); it must agree with v^(1-p*).
        """
        u = _as_positive_array(u, "u")
        v = _as_positive_array(v, "v")
        if u.shape != v.shape:
            raise ValueError("u and v must have the same length")
        if v_hat is None:
            v_hat = v ** (1.0 - e.p_star)
            v_hat.flags.writeable = False
        else:
            v_hat = _as_positive_array(v_hat, "v_hat")
            if v_hat.shape != v.shape:
                raise ValueError("v_hat must match v in length")
        return cls(int(offset), u, v, v_hat)

    @property
    def left(self) -> int:
        return self.offset

    @property
    def right(self) -> int:
        return self.offset + len(self.u) - 1

    @property
    def size(self) -> int:
        return len(self.u)

    def slot(self, n: int) -> int:
        """Array slot of interval index n; n must lie in [-M, N]."""
        i = n - self.offset
        if not 0 <= i < self.size:
            raise IndexError(f"index {n} outside [{self.left}, {self.right}]")
        return i

    def indices(self) -> np.ndarray:
        return np.arange(self.left, self.right + 1)


@dataclass(frozen=True)
class Sequence:
    """A real sequence on [-M, N] with declared boundary padding.

    ``left`` resolves access at -M-1, ``right`` resolves access at N+1.
    NEUMANN_COPY is only meaningful on the left (the reflecting start used by
    the NN regime).
    """

    offset: int
    values: np.ndarray
    left: BoundaryRule = BoundaryRule.FREE
    right: BoundaryRule = BoundaryRule.FREE

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("values must be a nonempty 1-d array")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if self.right is BoundaryRule.NEUMANN_COPY:
            raise ValueError("NEUMANN_COPY is only supported on the left end")

    @property
    def left_index(self) -> int:
        return self.offset

    @property
    def right_index(self) -> int:
        return self.offset + len(self.values) - 1

    @property
    def size(self) -> int:
        return len(self.values)

    def value(self, n: int) -> float:
        """Value at index n, resolving the one-slot boundary padding."""
        i = n - self.offset
        if 0 <= i < self.size:
            return float(self.values[i])
        if i == -1:
            if self.left is BoundaryRule.DIRICHLET_ZERO:
                return 0.0
            if self.left is BoundaryRule.NEUMANN_COPY:
                return float(self.values[0])
            raise BoundaryError(f"access at {n} with a free left boundary")
        if i == self.size:
            if self.right is BoundaryRule.DIRICHLET_ZERO:
                return 0.0
            raise BoundaryError(f"access at {n} with a free right boundary")
        raise IndexError(f"index {n} is more than one slot outside the interval")

    def with_boundaries(self, left: BoundaryRule, right: BoundaryRule) -> "Sequence":
        return Sequence(self.offset, self.values, left, right)


def _check_aligned(x: Sequence, w: WeightedInterval) -> None:
    if x.offset != w.offset or x.size != w.size:
        raise ValueError("sequence and interval must cover the same index range")


def signed_pow(t, r: float):
    """sgn(t) |t|^r, with the convention that it vanishes at t = 0.

    Safe for r < 1 where |t|^(r-1) alone would blow up at 0.
    """
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    nz = t != 0.0
    out[nz] = np.sign(t[nz]) * np.abs(t[nz]) ** r
    return out if out.ndim else float(out)


def lq_norm(x: Sequence, w: WeightedInterval, e: Exponents,
            shift: float = 0.0) -> float:
    """Weighted q-norm (sum u_n |x_n - shift|^q)^(1/q)."""
    _check_aligned(x, w)
    s = np.sum(w.u * np.abs(x.values - shift) ** e.q)
    return float(s ** (1.0 / e.q))


def _forward_diffs(x: Sequence) -> np.ndarray:
    # d_n = x_n - x_{n+1} for n in [-M, N]; needs the right pad.
    pad = x.value(x.right_index + 1)
    return x.values - np.append(x.values[1:], pad)


def _backward_diffs(x: Sequence) -> np.ndarray:
    # d_n = x_n - x_{n-1} for n in [-M, N]; needs the left pad.
    pad = x.value(x.left_index - 1)
    d = x.values - np.append(pad, x.values[:-1])
    if x.left is BoundaryRule.NEUMANN_COPY:
        d[0] = 0.0  # exact, not just numerically zero
    return d


def forward_energy(x: Sequence, w: WeightedInterval, e: Exponents) -> float:
    """(sum v_n |x_n - x_{n+1}|^p)^(1/p), resolving x_{N+1} from the right rule."""
    _check_aligned(x, w)
    d = _forward_diffs(x)
    return float(np.sum(w.v * np.abs(d) ** e.p) ** (1.0 / e.p))


def backward_energy(x: Sequence, w: WeightedInterval, e: Exponents) -> float:
    """(sum v_n |x_n - x_{n-1}|^p)^(1/p), resolving x_{-M-1} from the left rule."""
    _check_aligned(x, w)
    d = _backward_diffs(x)
    return float(np.sum(w.v * np.abs(d) ** e.p) ** (1.0 / e.p))


def hardy_H(x: Sequence) -> Sequence:
    """Running-sum operator: (Hx)(n) = sum_{i=-M}^{n} x_i."""
    return Sequence(x.offset, np.cumsum(x.values))


def hardy_Hstar(x: Sequence) -> Sequence:
    """Tail-sum operator: (H*x)(n) = sum_{i=n}^{N} x_i, the adjoint of hardy_H."""
    vals = np.cumsum(x.values[::-1])[::-1]
    return Sequence(x.offset, vals)


def inner(x: Sequence, y: Sequence) -> float:
    """Unweighted bilinear pairing sum_n x_n y_n."""
    if x.offset != y.offset or x.size != y.size:
        raise ValueError("sequences must cover the same index range")
    return float(np.sum(x.values * y.values))


def decreasing_rearrange(x: Sequence) -> Sequence:
    """Suffix-maximum envelope y_n = max_{k >= n} |x_k|; y is non-increasing."""
    y = np.maximum.accumulate(np.abs(x.values)[::-1])[::-1]
    return Sequence(x.offset, y, x.left, x.right)
