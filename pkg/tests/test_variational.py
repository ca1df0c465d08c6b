import numpy as np
import pytest
from scipy.linalg import eigh

from discrete_hardy import (
    Case,
    DegenerateError,
    EstimateConfig,
    Exponents,
    Sequence,
    WeightedInterval,
    characteristic_residual,
    eigen_oracle,
    estimate_A,
    ratio,
)
from discrete_hardy.variational import _tridiag

from conftest import EXPONENT_PAIRS, random_interval

E22 = Exponents(2.0, 2.0)


def ones(L, offset=0):
    return WeightedInterval.from_weights(offset, np.ones(L), np.ones(L), E22)


# ---------------------------------------------------------------------------
# the Rayleigh-type ratio


class TestRatio:
    def test_single_point_one_sided(self):
        w = ones(1)
        x = Sequence(0, [1.0])
        assert ratio(Case.ND, x, w, E22) == pytest.approx(1.0, rel=1e-15)
        assert ratio(Case.DN, x, w, E22) == pytest.approx(1.0, rel=1e-15)

    def test_two_point_dd(self):
        w = ones(2)
        x = Sequence(0, [1.0, 0.0])
        assert ratio(Case.DD, x, w, E22) == pytest.approx(2.0 ** -0.5, rel=1e-15)

    def test_two_point_nn(self):
        w = ones(2)
        x = Sequence(0, [-1.0, 1.0])
        assert ratio(Case.NN, x, w, E22) == pytest.approx(2.0 ** -0.5, rel=1e-15)

    def test_nn_ratio_ignores_constant_shift(self):
        rng = np.random.default_rng(11)
        for p, q in EXPONENT_PAIRS:
            e = Exponents(p, q)
            w = random_interval(rng, e, min_len=3, max_len=8)
            vals = rng.standard_normal(w.size)
            r0 = ratio(Case.NN, Sequence(w.offset, vals), w, e)
            r1 = ratio(Case.NN, Sequence(w.offset, vals + 3.7), w, e)
            assert r1 == pytest.approx(r0, rel=1e-10)

    def test_scale_invariance(self):
        rng = np.random.default_rng(13)
        e = Exponents(1.5, 3.0)
        w = random_interval(rng, e, min_len=3, max_len=8)
        vals = rng.standard_normal(w.size)
        vals[-1] = 0.0
        x = Sequence(w.offset, vals)
        r0 = ratio(Case.DD, x, w, e)
        r1 = ratio(Case.DD, Sequence(w.offset, 5.0 * vals), w, e)
        assert r1 == pytest.approx(r0, rel=1e-12)

    def test_dd_requires_terminal_zero(self):
        w = ones(3)
        with pytest.raises(ValueError):
            ratio(Case.DD, Sequence(0, [1.0, 2.0, 1.0]), w, E22)


# ---------------------------------------------------------------------------
# ascent estimator


class TestEstimate:
    def test_deterministic_given_seed(self):
        rng = np.random.default_rng(17)
        w = random_interval(rng, E22, min_len=4, max_len=8)
        cfg = EstimateConfig(restarts=2, seed=7)
        a = estimate_A(Case.ND, w, E22, cfg)
        b = estimate_A(Case.ND, w, E22, cfg)
        assert a.a_hat == b.a_hat
        assert np.array_equal(a.maximizer.values, b.maximizer.values)

    def test_a_hat_is_ratio_at_maximizer(self):
        rng = np.random.default_rng(19)
        for case in Case:
            for p, q in EXPONENT_PAIRS:
                e = Exponents(p, q)
                w = random_interval(rng, e, min_len=3, max_len=7)
                res = estimate_A(case, w, e, EstimateConfig(restarts=1))
                assert res.a_hat == ratio(case, res.maximizer, w, e)

    def test_dd_maximizer_respects_constraint(self):
        rng = np.random.default_rng(23)
        w = random_interval(rng, E22, min_len=3, max_len=8)
        res = estimate_A(Case.DD, w, E22, EstimateConfig(restarts=1))
        assert res.maximizer.values[-1] == 0.0

    def test_degenerate_when_no_free_variables(self):
        w = ones(1)
        with pytest.raises(DegenerateError):
            estimate_A(Case.DD, w, E22)

    def test_with_oracle_rejects_off_diagonal(self):
        w = ones(3)
        with pytest.raises(ValueError):
            estimate_A(Case.ND, w, Exponents(1.5, 3.0), with_oracle=True)

    def test_matches_eigen_oracle_on_small_instances(self):
        rng = np.random.default_rng(29)
        for case in Case:
            for _ in range(5):
                w = random_interval(rng, E22, min_len=2, max_len=8)
                res = estimate_A(case, w, E22, with_oracle=True)
                assert res.oracle_value is not None
                assert res.a_hat <= res.oracle_value * (1.0 + 1e-10)
                assert res.a_hat == pytest.approx(res.oracle_value, rel=1e-7)


# ---------------------------------------------------------------------------
# p = q = 2 eigen oracle


class TestEigenOracle:
    def test_hand_values(self):
        assert eigen_oracle(Case.ND, ones(1)) == pytest.approx(1.0, rel=1e-14)
        assert eigen_oracle(Case.DN, ones(1)) == pytest.approx(1.0, rel=1e-14)
        assert eigen_oracle(Case.DD, ones(2)) == pytest.approx(2.0 ** -0.5,
                                                               rel=1e-14)
        assert eigen_oracle(Case.NN, ones(2)) == pytest.approx(2.0 ** -0.5,
                                                               rel=1e-14)

    def test_matches_dense_generalized_eigensolve(self):
        rng = np.random.default_rng(31)
        for case in Case:
            for _ in range(10):
                w = random_interval(rng, E22, min_len=2, max_len=10)
                diag, off, mass = _tridiag(case, w)
                A = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
                lams = eigh(A, np.diag(mass), eigvals_only=True)
                k = 1 if case is Case.NN else 0
                expect = lams[k] ** -0.5
                assert eigen_oracle(case, w) == pytest.approx(expect, rel=1e-12)

    def test_ratio_never_beats_oracle(self):
        rng = np.random.default_rng(37)
        for case in Case:
            for _ in range(20):
                w = random_interval(rng, E22, min_len=2, max_len=9)
                a = eigen_oracle(case, w)
                vals = rng.standard_normal(w.size)
                if case is Case.DD:
                    vals[-1] = 0.0
                r = ratio(case, Sequence(w.offset, vals), w, E22)
                assert r <= a * (1.0 + 1e-12)


# ---------------------------------------------------------------------------
# characteristic equation residual


def oracle_pair(case, w):
    """First nontrivial eigenpair of the stiffness/mass pencil, embedded back
    into a sequence on the full interval."""
    diag, off, mass = _tridiag(case, w)
    A = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    lams, vecs = eigh(A, np.diag(mass))
    k = 1 if case is Case.NN else 0
    vec = vecs[:, k]
    if case is Case.DD:
        vec = np.append(vec, 0.0)
    return float(lams[k]), Sequence(w.offset, vec)


class TestCharacteristicResidual:
    def test_oracle_eigenvector_has_tiny_residual(self):
        rng = np.random.default_rng(41)
        for case in Case:
            for _ in range(10):
                w = random_interval(rng, E22, min_len=2, max_len=10)
                lam, x = oracle_pair(case, w)
                scale = (1.0 + lam) * float(np.max(np.abs(x.values))) \
                    * float(max(w.u.max(), w.v.max()))
                res = characteristic_residual(case, x, lam, w, E22)
                assert res <= 1e-8 * scale

    def test_two_point_dd_witness_is_exact(self):
        w = ones(2)
        x = Sequence(0, [1.0, 0.0])
        assert characteristic_residual(Case.DD, x, 2.0, w, E22) == 0.0

    def test_random_sequence_has_positive_residual(self):
        rng = np.random.default_rng(43)
        w = random_interval(rng, E22, min_len=4, max_len=8)
        x = Sequence(w.offset, rng.standard_normal(w.size))
        assert characteristic_residual(Case.ND, x, 1.0, w, E22) > 1e-6

    def test_rejects_off_diagonal_exponents(self):
        w = ones(3)
        x = Sequence(0, np.ones(3))
        with pytest.raises(ValueError):
            characteristic_residual(Case.ND, x, 1.0, w, Exponents(1.5, 3.0))

    def test_dd_requires_terminal_zero(self):
        w = ones(3)
        with pytest.raises(ValueError):
            characteristic_residual(Case.DD, Sequence(0, np.ones(3)), 1.0, w,
                                    E22)
