import math

import numpy as np
import pytest

from fdehat import (DomainError, SeirsParams, SeirsState, example1, example2, seirs_beta,
                    seirs_lambda, seirs_problem)


def caputo_power(k, alpha, t):
    """Caputo derivative of t^k (k > 0) by the power rule, via math.gamma."""
    return math.gamma(k + 1) / math.gamma(k + 1 - alpha) * t ** (k - alpha)


class TestExample1:
    def test_shape(self):
        p = example1()
        assert (p.m, p.alpha, p.tau) == (2, 0.5, 1.0)
        np.testing.assert_array_equal(p.y0, [0.0, 0.0])

    def test_exact_at_one(self):
        ex = example1().exact
        assert ex[0](1.0) == 1.0 and ex[1](1.0) == 1.0

    def test_rhs_at_origin(self):
        assert example1().f(0.0, np.zeros(2))[0] == 0.0

    def test_hand_value(self):
        assert example1().f(1.0, np.ones(2))[1] == pytest.approx(1.80541, abs=5e-6)

    def test_residual_identity(self, rng):
        p = example1()
        for t in rng.uniform(0, 1, 100):
            y = np.array([ex(t) for ex in p.exact])
            lhs = [caputo_power(2.5, 0.5, t), caputo_power(3.0, 0.5, t)]
            np.testing.assert_allclose(p.f(t, y), lhs, atol=1e-12, rtol=0)


class TestExample2:
    def test_initial(self):
        p = example2()
        assert p.exact[0](0.0) == 1.0 and p.exact[1](0.0) == 2.0
        np.testing.assert_array_equal(p.y0, [1.0, 2.0])

    def test_exact_only_for_alpha_one(self):
        assert example2(0.7).exact is None
        assert example2(0.7).alpha == 0.7

    def test_residual_identity(self, rng):
        p = example2()
        for t in rng.uniform(0, 10, 100):
            y = np.array([math.cos(t) + math.sin(t), 2 * math.cos(t)])
            dy = [math.cos(t) - math.sin(t), -2 * math.sin(t)]
            np.testing.assert_allclose(p.f(t, y), dy, atol=1e-12, rtol=0)

    def test_bad_alpha(self):
        with pytest.raises(DomainError):
            example2(1.5)


class TestSeasonalRates:
    def test_beta(self):
        p = SeirsParams()
        assert seirs_beta(p, 0.0) == pytest.approx(88.25, abs=1e-12)
        assert seirs_beta(p, 0.25) == pytest.approx(73.2475, abs=1e-12)

    def test_lambda(self):
        p = SeirsParams()
        assert seirs_lambda(p, 0.0) == pytest.approx(0.0113, abs=1e-15)
        assert seirs_lambda(p, 0.25) == pytest.approx(0.009379, abs=1e-15)

    def test_constant_without_amplitude(self, rng):
        p = SeirsParams(b1=0.0, c1=0.0)
        for t in rng.uniform(-3, 3, 20):
            assert seirs_beta(p, t) == p.b0
            assert seirs_lambda(p, t) == p.mu

    def test_periodic(self, rng):
        p = SeirsParams()
        for t in rng.uniform(0, 5, 200):
            assert abs(seirs_beta(p, t + 1) - seirs_beta(p, t)) <= 1e-12
            assert abs(seirs_lambda(p, t + 1) - seirs_lambda(p, t)) <= 1e-12


class TestSeirs:
    def test_defaults(self):
        pr = seirs_problem()
        assert (pr.m, pr.alpha, pr.tau) == (4, 0.993, 5.0)
        np.testing.assert_array_equal(pr.y0, [0.4081, 0.0110, 0.0278, 0.5531])
        assert pr.exact is None
        assert sum(SeirsState().as_array()) == pytest.approx(1.0, abs=1e-12)

    def test_infectious_rate_at_start(self):
        pr = seirs_problem()
        f = pr.f(0.0, pr.y0)
        assert f[2] == pytest.approx(91 * 0.0110 - 36.0113 * 0.0278, abs=1e-15)
        assert f[2] == pytest.approx(-0.00011414, abs=1e-8)

    def test_zero_state_without_births(self):
        pr = seirs_problem(SeirsParams(mu=0.0))
        np.testing.assert_array_equal(pr.f(1.3, np.zeros(4)), np.zeros(4))

    def test_mass_balance(self, rng):
        p = SeirsParams()
        pr = seirs_problem(p)
        for _ in range(1000):
            t = rng.uniform(0, 5)
            y = rng.uniform(0, 1, 4)
            total = float(np.sum(pr.f(t, y)))
            assert abs(total - (seirs_lambda(p, t) - p.mu * y.sum())) <= 1e-12

    @pytest.mark.parametrize("kwargs", [dict(b1=1.5), dict(c1=-0.1), dict(mu=-1.0),
                                        dict(alpha=0.0), dict(alpha=1.01), dict(nu=math.nan)])
    def test_param_validation(self, kwargs):
        with pytest.raises(DomainError):
            SeirsParams(**kwargs)

    def test_state_validation(self):
        with pytest.raises(DomainError):
            SeirsState(S=-0.1)
