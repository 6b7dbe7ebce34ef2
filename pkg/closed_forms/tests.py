import numpy as np
from django.test import SimpleTestCase

from core.exceptions import DomainError, IndexRangeError, InvalidSizeError, PoleError
from graphs.services import build_cycle, build_torus, full_subset, laplacian
from spectral.services import eigensystem, greens_alpha_oracle, greens_pseudo, torus_spectral_entry
from .identities import identity_residual_cycle, identity_residual_torus
from .services import cycle_eigensystem, cycle_green, cycle_green_alpha
from .structures import CycleDistance, TorusSpec
from .tori import (
    green_at,
    representative_row,
    t_torus_green,
    t_torus_row,
    torus3_green,
    torus_green,
    torus_table,
)


class CycleGreenTests(SimpleTestCase):
    def test_known_values(self):
        self.assertAlmostEqual(cycle_green(3, 0), 4 / 9, places=14)
        self.assertAlmostEqual(cycle_green(3, 1), -2 / 9, places=14)
        self.assertAlmostEqual(cycle_green(4, 2), -0.375, places=14)

    def test_reflection_and_row_sum(self):
        for m in range(3, 31):
            values = [cycle_green(m, a) for a in range(m)]
            self.assertAlmostEqual(sum(values), 0.0, places=10)
            for a in range(1, m):
                self.assertAlmostEqual(values[a], values[m - a], places=12)

    def test_matches_dense_pseudo_inverse(self):
        for m in range(3, 31):
            table = greens_pseudo(eigensystem(laplacian(full_subset(build_cycle(m))))).entries
            closed = np.array([cycle_green(m, a) for a in range(m)])
            np.testing.assert_allclose(table[0], closed, atol=1e-9, err_msg=f"m={m}")

    def test_range_checks(self):
        with self.assertRaises(IndexRangeError):
            cycle_green(5, 5)
        with self.assertRaises(InvalidSizeError):
            cycle_green(2, 0)
        self.assertEqual(CycleDistance.between(7, 6, 1).canonical, 2)


class CycleEigensystemTests(SimpleTestCase):
    def test_values(self):
        np.testing.assert_allclose(cycle_eigensystem(4).values, [0, 1, 1, 2], atol=1e-15)
        six = cycle_eigensystem(6)
        self.assertEqual(six.labels[-1], 3)
        self.assertAlmostEqual(six.values[-1], 2.0, places=15)

    def test_orthonormal_eigenvectors(self):
        for m in (3, 4, 9, 16):
            es = cycle_eigensystem(m)
            self.assertLess(es.gram_residual(), 1e-12)
            lap = laplacian(full_subset(build_cycle(m))).entries
            np.testing.assert_allclose(lap @ es.vectors, es.vectors * es.values, atol=1e-12)


class CycleGreenAlphaTests(SimpleTestCase):
    def test_known_values(self):
        self.assertAlmostEqual(cycle_green_alpha(4, 1.0, 0), 1 / 3, places=12)
        self.assertAlmostEqual(cycle_green_alpha(4, 1.0, 1), -1 / 12, places=12)
        self.assertAlmostEqual(cycle_green_alpha(3, 1.5, 0), 2 / 9, places=12)

    def test_matches_oracle_including_odd_lengths(self):
        for m in range(3, 21):
            es = cycle_eigensystem(m)
            for alpha in (0.1, 0.5, 1.0, 1.5, 2.0, 5.0):
                oracle = greens_alpha_oracle(es, alpha).entries[0]
                closed = [cycle_green_alpha(m, alpha, a) for a in range(m)]
                np.testing.assert_allclose(closed, oracle, atol=1e-9, err_msg=f"m={m} alpha={alpha}")

    def test_small_shift_difference_limit(self):
        for m in (5, 8):
            closed = cycle_green_alpha(m, 1e-8, 2) - cycle_green_alpha(m, 1e-8, 0)
            exact = cycle_green(m, 2) - cycle_green(m, 0)
            self.assertLessEqual(abs(closed - exact), 1e-6)

    def test_non_positive_shift(self):
        with self.assertRaises(PoleError):
            cycle_green_alpha(5, 0.0, 1)
        with self.assertRaises(DomainError):
            cycle_green_alpha(5, -0.5, 1)


class TwoTorusTests(SimpleTestCase):
    def test_three_by_three_origin(self):
        self.assertAlmostEqual(torus_green(3, 3, 0, 0), 8 / 9, places=12)

    def test_three_by_three_row_sum(self):
        total = sum(torus_green(3, 3, a, b) for a in range(3) for b in range(3))
        self.assertAlmostEqual(total, 0.0, places=12)

    def test_unequal_dims_against_fourier_sum(self):
        for a in range(5):
            for b in range(7):
                self.assertAlmostEqual(
                    torus_green(5, 7, a, b), torus_spectral_entry((5, 7), (a, b)), places=8
                )

    def test_canonical_and_verbatim_distances_agree(self):
        for a in range(1, 6):
            self.assertAlmostEqual(torus_green(6, 5, a, 3), torus_green(6, 5, 6 - a, 5 - 3), places=12)


class TTorusTests(SimpleTestCase):
    def test_single_cycle_is_exact(self):
        for a in range(9):
            self.assertEqual(t_torus_green([9], [a]), cycle_green(9, a))

    def test_two_dims_match_torus_green(self):
        self.assertAlmostEqual(t_torus_green([3, 3], (0, 0)), 8 / 9, places=12)
        for a in range(4):
            for b in range(6):
                self.assertAlmostEqual(t_torus_green([4, 6], (a, b)), torus_green(4, 6, a, b), places=10)

    def test_three_and_four_dims_against_fourier_sum(self):
        for dims in ([3, 3, 3], [3, 4, 5], [4, 4, 4], [3, 3, 3, 3]):
            spec = TorusSpec(tuple(dims))
            displacements = np.array(
                [np.unravel_index(v, spec.dims) for v in range(spec.vertex_count)]
            )
            values = t_torus_row(spec, displacements)
            oracle = [torus_spectral_entry(spec.dims, d) for d in displacements]
            np.testing.assert_allclose(values, oracle, atol=1e-8, err_msg=f"dims={dims}")

    def test_unsorted_dims(self):
        self.assertAlmostEqual(
            t_torus_green([3, 5, 4], (1, 2, 3)), t_torus_green([5, 4, 3], (2, 3, 1)), places=12
        )

    def test_invalid_dims_and_displacements(self):
        with self.assertRaises(InvalidSizeError):
            t_torus_green([3, 2], (0, 0))
        with self.assertRaises(IndexRangeError):
            t_torus_green([3, 3], (0, 3))
        with self.assertRaises(IndexRangeError):
            t_torus_green([3, 3], (0, 1, 2))


class ThreeTorusTests(SimpleTestCase):
    def test_matches_recursion(self):
        for m in (3, 4, 5):
            for d in ((0, 0, 0), (1, 2, 0), (2, 1, 1)):
                d = tuple(a % m for a in d)
                self.assertAlmostEqual(torus3_green(m, d), t_torus_green([m, m, m], d), places=10)

    def test_against_fourier_sum(self):
        self.assertAlmostEqual(torus3_green(4, (1, 2, 0)), torus_spectral_entry((4, 4, 4), (1, 2, 0)), places=8)

    def test_translation_invariance(self):
        graph = build_torus([3, 3, 3])
        shift = np.array([1, 2, 0])
        reference = green_at([3, 3, 3], (0, 0, 0), tuple(shift))
        for v in range(graph.vertex_count):
            source = np.array(graph.coordinates(v))
            target = tuple((source + shift) % 3)
            self.assertAlmostEqual(green_at([3, 3, 3], tuple(source), target), reference, places=12)


class TorusTableTests(SimpleTestCase):
    def test_representative_row_size(self):
        displacements, values = representative_row([4, 5])
        self.assertEqual(len(values), 3 * 3)
        self.assertEqual(tuple(displacements[-1]), (2, 2))

    def test_matches_dense_pseudo_inverse(self):
        graph = build_torus([3, 4])
        dense = greens_pseudo(eigensystem(laplacian(full_subset(graph)))).entries
        np.testing.assert_allclose(torus_table([3, 4]), dense, atol=1e-9)

    def test_defining_relations(self):
        for dims in ([8, 8], [4, 4, 4]):
            graph = build_torus(dims)
            n = graph.vertex_count
            lap = laplacian(full_subset(graph)).entries
            table = torus_table(dims)
            np.testing.assert_allclose(lap @ table, np.eye(n) - 1.0 / n, atol=1e-8)
            np.testing.assert_allclose(table, table.T, atol=1e-10)


class IdentityTests(SimpleTestCase):
    def test_cycle_identity(self):
        for m in (4, 5):
            for x in range(m):
                for y in range(m):
                    self.assertLessEqual(identity_residual_cycle(m, x, y), 1e-10)

    def test_torus_identity(self):
        self.assertLessEqual(identity_residual_torus(3, 3, 0, 0, 0, 0), 1e-10)
        for x, xp, y, yp in ((0, 0, 2, 3), (4, 1, 1, 5), (2, 6, 2, 0)):
            self.assertLessEqual(identity_residual_torus(5, 7, x, xp, y, yp), 1e-10)

    def test_vertex_range(self):
        with self.assertRaises(IndexRangeError):
            identity_residual_cycle(4, 0, 4)
