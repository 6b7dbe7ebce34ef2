import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import BranchError, DomainError
from .services import cheb_T, cheb_U, cheb_ratio, param_from_alpha, ratio_at_theta


class SpectralParameterTests(SimpleTestCase):
    def test_known_roots(self):
        self.assertAlmostEqual(param_from_alpha(1.0).r, 2 + math.sqrt(3), places=12)
        self.assertAlmostEqual(param_from_alpha(1.5).r, 2.5 + math.sqrt(5.25), places=12)
        zero = param_from_alpha(0.0)
        self.assertEqual((zero.r, zero.theta), (1.0, 0.0))

    def test_defining_identity(self):
        for alpha in (1e-9, 0.01, 0.5, 3.0, 250.0):
            p = param_from_alpha(alpha)
            self.assertGreaterEqual(p.r, 1.0)
            self.assertAlmostEqual((p.r + 1 / p.r) / (2 * (1 + alpha)), 1.0, places=14)

    def test_negative_shift_out_of_branch(self):
        with self.assertRaises(BranchError):
            param_from_alpha(-0.1)


class ChebyshevValueTests(SimpleTestCase):
    def test_small_orders(self):
        self.assertAlmostEqual(cheb_T(2, 2.0), 7.0, places=12)
        self.assertAlmostEqual(cheb_U(1, 2.0), 4.0, places=12)
        self.assertAlmostEqual(cheb_T(0.5, 3.0), math.sqrt(2), places=12)

    def test_at_one(self):
        for order in (0, 1, 2.5, 17):
            self.assertEqual(cheb_T(order, 1.0), 1.0)
            self.assertEqual(cheb_U(order, 1.0), order + 1.0)

    def test_argument_below_one(self):
        with self.assertRaises(DomainError):
            cheb_T(2, 0.5)
        with self.assertRaises(DomainError):
            cheb_U(2, -3.0)

    def test_pell_identity(self):
        for x in (1.0, 1.5, 2.5, 10.0):
            for nu in range(1, 51):
                t, u = cheb_T(nu, x), cheb_U(nu - 1, x)
                residual = t * t - (x * x - 1) * u * u
                self.assertLessEqual(abs(residual - 1.0), 1e-9 * t * t, msg=f"x={x} nu={nu}")

    def test_recurrence_on_integer_and_half_integer_orders(self):
        for x in (1.2, 2.0, 5.0):
            for nu in [k / 2 for k in range(2, 60)]:
                lhs = cheb_T(nu + 1, x)
                rhs = 2 * x * cheb_T(nu, x) - cheb_T(nu - 1, x)
                self.assertLessEqual(abs(lhs - rhs), 1e-9 * abs(lhs))

    def test_power_and_exp_paths_agree(self):
        for x, orders in ((1.00001, range(0, 10001, 97)), (1.5, range(0, 700, 7))):
            for nu in orders:
                for fn in (cheb_T, cheb_U):
                    fast, slow = fn(nu, x, method="power"), fn(nu, x, method="exp")
                    self.assertLessEqual(abs(fast - slow), 1e-10 * abs(slow), msg=f"{fn.__name__} {x} {nu}")

    def test_power_path_rejects_fractional_order(self):
        with self.assertRaises(DomainError):
            cheb_T(1.5, 2.0, method="power")


class RatioFormTests(SimpleTestCase):
    def test_matches_direct_quotient(self):
        for nu, mu, x in ((2, 1, 2.0), (1.5, 0.5, 2.5), (0.5, 0.5, 1.25), (3, 5, 4.0)):
            direct = cheb_T(nu, x) / cheb_U(mu, x)
            self.assertAlmostEqual(cheb_ratio(nu, mu, x) / direct, 1.0, places=12)

    def test_large_order_stays_finite(self):
        value = cheb_ratio(1e6, 1e6 - 1, 1 + 1e-6)
        self.assertTrue(math.isfinite(value))
        self.assertGreater(value, 0.0)

    def test_theta_limit(self):
        self.assertEqual(ratio_at_theta(3.0, 4.0, 0.0), 1 / 5)

    def test_vectorized(self):
        out = ratio_at_theta(np.array([0.0, 1.0, 2.0]), 1.0, 1.0)
        self.assertEqual(out.shape, (3,))
        np.testing.assert_allclose(out, [cheb_ratio(k, 1, math.cosh(1.0)) for k in range(3)], rtol=1e-12)
