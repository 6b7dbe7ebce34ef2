import numpy as np
from django.test import SimpleTestCase

from closed_forms.tori import t_torus_row, torus_green, all_displacements
from core.exceptions import MisuseError
from graphs.services import (
    build_cycle,
    build_torus,
    cartesian_product,
    dirichlet_subset,
    full_subset,
    laplacian,
    product_subset,
)
from spectral.services import eigensystem, greens_dirichlet, greens_pseudo
from .providers import cycle_provider, cycle_spectrum, factor_spectrum, oracle_provider
from .services import (
    product_eigensystem,
    product_green_boundary_equal,
    product_green_boundary_general,
    product_green_noboundary_equal,
    product_green_noboundary_general,
    rotate_eigenspaces,
)


def dense_dirichlet(left, right):
    subset = product_subset(left, right)
    return greens_dirichlet(laplacian(subset)).entries


def dense_pseudo(graph):
    return greens_pseudo(eigensystem(laplacian(full_subset(graph)))).entries


def pseudo_relation_residuals(graph, table):
    n = graph.vertex_count
    lap = laplacian(full_subset(graph)).entries
    return (
        float(np.max(np.abs(lap @ table - (np.eye(n) - 1.0 / n)))),
        float(np.max(np.abs(table.sum(axis=1)))),
    )


class ProviderTests(SimpleTestCase):
    def test_closed_form_and_oracle_providers_agree(self):
        closed, oracle = cycle_provider(7), oracle_provider(full_subset(build_cycle(7)))
        for alpha in (0.2, 1.0, 3.5):
            np.testing.assert_allclose(closed(alpha), oracle(alpha), atol=1e-10)
            self.assertLessEqual(closed.residual(alpha), 1e-9)
        np.testing.assert_allclose(closed.pseudo(), oracle.pseudo(), atol=1e-10)

    def test_dirichlet_provider_at_zero_is_inverse(self):
        subset = dirichlet_subset(build_cycle(3), [0, 1])
        provider = oracle_provider(subset)
        np.testing.assert_allclose(provider(0.0), [[4 / 3, 2 / 3], [2 / 3, 4 / 3]], atol=1e-12)
        self.assertLessEqual(provider.residual(0.7), 1e-9)


class BoundaryProductTests(SimpleTestCase):
    def test_pair_in_triangle_times_triangle(self):
        left = dirichlet_subset(build_cycle(3), [0, 1])
        table = product_green_boundary_equal(oracle_provider(left), cycle_spectrum(3))
        self.assertAlmostEqual(table[0, 0], 13 / 9, places=10)
        np.testing.assert_allclose(table.entries, table.entries.T, atol=1e-10)
        np.testing.assert_allclose(table.entries, dense_dirichlet(left, full_subset(build_cycle(3))), atol=1e-9)

    def test_single_vertex_times_four_cycle(self):
        left = dirichlet_subset(build_cycle(4), [0])
        right = full_subset(build_cycle(4))
        table = product_green_boundary_equal(oracle_provider(left), factor_spectrum(right))
        np.testing.assert_allclose(table.entries, dense_dirichlet(left, right), atol=1e-9)
        lap = laplacian(table.subset).entries
        np.testing.assert_allclose(lap @ table.entries, np.eye(4), atol=1e-9)

    def test_general_degrees(self):
        left = dirichlet_subset(build_cycle(3), [0, 1])
        right = full_subset(build_torus([3, 3]))
        table = product_green_boundary_general(oracle_provider(left), factor_spectrum(right))
        self.assertEqual(table.size, 18)
        np.testing.assert_allclose(table.entries, dense_dirichlet(left, right), atol=1e-9)

    def test_general_reduces_to_equal(self):
        left = dirichlet_subset(build_cycle(5), [1, 2, 3])
        provider, spectrum = oracle_provider(left), cycle_spectrum(4)
        np.testing.assert_allclose(
            product_green_boundary_general(provider, spectrum).entries,
            product_green_boundary_equal(provider, spectrum).entries,
            atol=1e-14,
        )

    def test_boundary_on_both_sides(self):
        left = dirichlet_subset(build_cycle(5), [0, 1])
        right = dirichlet_subset(build_cycle(4), [0, 1, 2])
        table = product_green_boundary_equal(oracle_provider(left), factor_spectrum(right))
        np.testing.assert_allclose(table.entries, dense_dirichlet(left, right), atol=1e-9)

    def test_misuse(self):
        left = dirichlet_subset(build_cycle(3), [0, 1])
        with self.assertRaises(MisuseError):
            product_green_boundary_equal(oracle_provider(left), factor_spectrum(full_subset(build_torus([3, 3]))))
        with self.assertRaises(MisuseError):
            product_green_boundary_general(cycle_provider(3), factor_spectrum(left))


class BoundarylessProductTests(SimpleTestCase):
    def test_triangle_squared_origin(self):
        table = product_green_noboundary_equal(cycle_provider(3), cycle_spectrum(3))
        self.assertAlmostEqual(table[0, 0], 8 / 9, places=12)

    def test_against_dense_pseudo_inverse(self):
        graph = build_torus([3, 4])
        table = product_green_noboundary_equal(cycle_provider(3), cycle_spectrum(4)).entries
        np.testing.assert_allclose(table, dense_pseudo(graph), atol=1e-9)
        lap_residual, row_residual = pseudo_relation_residuals(graph, table)
        self.assertLessEqual(lap_residual, 1e-9)
        self.assertLessEqual(row_residual, 1e-9)

    def test_against_two_torus_closed_form(self):
        table = product_green_noboundary_equal(cycle_provider(5), cycle_spectrum(7)).entries
        for a in range(5):
            for b in range(7):
                self.assertAlmostEqual(table[0, a * 7 + b], torus_green(5, 7, a, b), places=9)

    def test_general_degrees_three_torus(self):
        right = full_subset(build_torus([3, 3]))
        table = product_green_noboundary_general(cycle_provider(3), factor_spectrum(right)).entries
        graph = build_torus([3, 3, 3])
        np.testing.assert_allclose(table, dense_pseudo(graph), atol=1e-8)
        np.testing.assert_allclose(table[0], t_torus_row([3, 3, 3], all_displacements([3, 3, 3])), atol=1e-9)

    def test_general_degrees_unequal_sizes(self):
        right = full_subset(build_torus([3, 3]))
        table = product_green_noboundary_general(cycle_provider(4), factor_spectrum(right)).entries
        graph = cartesian_product(build_cycle(4), build_torus([3, 3]))
        np.testing.assert_allclose(table, dense_pseudo(graph), atol=1e-8)
        lap_residual, row_residual = pseudo_relation_residuals(graph, table)
        self.assertLessEqual(max(lap_residual, row_residual), 1e-9)

    def test_general_reduces_to_equal(self):
        provider, spectrum = cycle_provider(4), cycle_spectrum(5)
        np.testing.assert_allclose(
            product_green_noboundary_general(provider, spectrum).entries,
            product_green_noboundary_equal(provider, spectrum).entries,
            atol=1e-14,
        )

    def test_dirichlet_factor_rejected(self):
        with self.assertRaises(MisuseError):
            product_green_noboundary_equal(
                oracle_provider(dirichlet_subset(build_cycle(4), [0, 1])), cycle_spectrum(4)
            )
        with self.assertRaises(MisuseError):
            product_green_noboundary_equal(cycle_provider(3), factor_spectrum(full_subset(build_torus([3, 3]))))


class BasisIndependenceTests(SimpleTestCase):
    def test_rotating_repeated_eigenspaces(self):
        rng = np.random.default_rng(11)
        spectrum = cycle_spectrum(6)
        rotated = rotate_eigenspaces(spectrum.eigensystem, rng)
        self.assertGreater(np.max(np.abs(rotated.vectors - spectrum.eigensystem.vectors)), 1e-3)
        self.assertLess(rotated.gram_residual(), 1e-12)

        provider = cycle_provider(4)
        baseline = product_green_noboundary_equal(provider, spectrum).entries
        again = product_green_noboundary_equal(provider, type(spectrum)(eigensystem=rotated, degree=2)).entries
        np.testing.assert_allclose(again, baseline, atol=1e-9)

    def test_dense_spectrum_rotation_in_boundary_form(self):
        rng = np.random.default_rng(3)
        left = dirichlet_subset(build_cycle(5), [0, 1, 2])
        spectrum = factor_spectrum(full_subset(build_torus([3, 3])))
        rotated = type(spectrum)(eigensystem=rotate_eigenspaces(spectrum.eigensystem, rng), degree=4)
        provider = oracle_provider(left)
        np.testing.assert_allclose(
            product_green_boundary_general(provider, rotated).entries,
            product_green_boundary_general(provider, spectrum).entries,
            atol=1e-9,
        )


class ProductEigensystemTests(SimpleTestCase):
    def test_weighted_average_of_factor_values(self):
        c3 = eigensystem(laplacian(full_subset(build_cycle(3))))
        c33 = eigensystem(laplacian(full_subset(build_torus([3, 3]))))
        combined = product_eigensystem(c3, 2, c33, 4)
        direct = eigensystem(laplacian(full_subset(build_torus([3, 3, 3]))))
        np.testing.assert_allclose(combined.values, direct.values, atol=1e-10)
        self.assertTrue(combined.is_singular)
        lap = laplacian(combined.subset).entries
        np.testing.assert_allclose(lap @ combined.vectors, combined.vectors * combined.values, atol=1e-10)
