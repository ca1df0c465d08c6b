import numpy as np
import pytest

from discrete_hardy import Exponents, Sequence, WeightedInterval
from discrete_hardy.meanzero import check_min_property, f_eval, solve_m

from conftest import random_interval


def make(u, x, q):
    e = Exponents(q if q > 1 else 2.0, q)
    w = WeightedInterval.from_weights(0, u, np.ones(len(u)), e)
    return Sequence(0, x), w, e


def test_f_vanishes_at_weighted_mean():
    x, w, e = make([1.0, 2.0, 1.0], [0.0, 3.0, 6.0], 2.0)
    assert f_eval(x, w, e, 3.0) == 0.0
    assert solve_m(x, w, e).m == pytest.approx(3.0, abs=1e-14)


def test_symmetric_two_point_q3():
    x, w, e = make([1.0, 1.0], [0.0, 1.0], 3.0)
    assert f_eval(x, w, e, 0.5) == pytest.approx(0.0, abs=1e-15)
    res = solve_m(x, w, e)
    assert res.m == pytest.approx(0.5, abs=1e-12)


def test_two_point_q_three_halves():
    # m^(1/2) = 2 (1-m)^(1/2)  =>  m = 4/5
    x, w, e = make([1.0, 2.0], [0.0, 1.0], 1.5)
    res = solve_m(x, w, e)
    assert res.m == pytest.approx(0.8, abs=1e-10)
    assert abs(f_eval(x, w, e, 0.8)) <= 1e-12


def test_constant_sequence_returns_constant():
    x, w, e = make([1.0, 3.0], [2.5, 2.5], 2.7)
    res = solve_m(x, w, e)
    assert res.m == 2.5
    assert res.residual == 0.0


def test_f_is_decreasing_between_data_points():
    x, w, e = make([1.0, 0.5, 2.0], [-1.0, 0.5, 2.0], 2.5)
    ts = np.linspace(-1.0, 2.0, 50)
    vals = [f_eval(x, w, e, t) for t in ts]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("q", [1.5, 2.0, 3.0])
def test_random_instances_satisfy_root_and_min_property(q):
    e = Exponents(2.0, q)
    rng = np.random.default_rng(31)
    for _ in range(100):
        w = random_interval(rng, e, min_len=2, max_len=15)
        x = Sequence(w.offset, rng.standard_normal(w.size) * 3.0)
        res = solve_m(x, w, e)
        lo, hi = x.values.min(), x.values.max()
        assert lo <= res.m <= hi
        scale = float(np.sum(w.u) * max(np.max(np.abs(x.values - res.m)), 1e-30)
                      ** (q - 1.0))
        assert abs(res.residual) <= 1e-10 * scale
        assert check_min_property(x, w, e, res.m, 1e-4)


@pytest.mark.parametrize("q", [1.5, 2.0, 3.0])
def test_equivariance(q):
    e = Exponents(2.0, q)
    rng = np.random.default_rng(37)
    for _ in range(50):
        w = random_interval(rng, e, min_len=2, max_len=10)
        vals = rng.standard_normal(w.size)
        m0 = solve_m(Sequence(w.offset, vals), w, e).m
        c = float(rng.uniform(-5.0, 5.0))
        s = float(rng.uniform(0.1, 4.0))
        m_shift = solve_m(Sequence(w.offset, vals + c), w, e).m
        m_scale = solve_m(Sequence(w.offset, s * vals), w, e).m
        span = max(1.0, np.ptp(vals))
        assert abs(m_shift - (m0 + c)) <= 1e-10 * span
        assert abs(m_scale - s * m0) <= 1e-10 * s * span


def test_root_is_unique_sign_change():
    e = Exponents(2.0, 2.5)
    rng = np.random.default_rng(41)
    for _ in range(50):
        w = random_interval(rng, e, min_len=3, max_len=10)
        x = Sequence(w.offset, rng.standard_normal(w.size))
        m = solve_m(x, w, e).m
        delta = 1e-6 * np.ptp(x.values)
        assert f_eval(x, w, e, m - delta) > 0.0
        assert f_eval(x, w, e, m + delta) < 0.0


def test_min_property_rejects_off_center():
    x, w, e = make([1.0, 1.0, 1.0], [0.0, 1.0, 5.0], 2.0)
    m = solve_m(x, w, e).m
    assert check_min_property(x, w, e, m, 1e-4)
    assert not check_min_property(x, w, e, m + 0.1, 1e-4)
    with pytest.raises(ValueError):
        check_min_property(x, w, e, m, 0.0)
