import numpy as np
from django.test import SimpleTestCase, override_settings

from core.exceptions import (
    ConvergenceError,
    DivergenceError,
    MisuseError,
    PoleError,
    ShapeError,
    SingularityError,
)
from graphs.services import build_cycle, build_torus, dirichlet_subset, full_subset, laplacian
from .jacobi import _off_norm, jacobi_eigh
from .services import (
    eigensystem,
    fundamental_matrix,
    greens_alpha_oracle,
    greens_dirichlet,
    greens_pseudo,
    stationary,
    torus_spectral_entry,
    transient_series,
    transition_matrix,
)


def full_eigensystem(graph):
    return eigensystem(laplacian(full_subset(graph)))


class JacobiTests(SimpleTestCase):
    def test_matches_lapack_on_odd_random_matrix(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(7, 7))
        a = a + a.T
        values, vectors = jacobi_eigh(a)
        np.testing.assert_allclose(values, np.linalg.eigvalsh(a), atol=1e-12)
        np.testing.assert_allclose(vectors.T @ vectors, np.eye(7), atol=1e-12)
        np.testing.assert_allclose(a @ vectors, vectors * values, atol=1e-11)

    def test_sweep_cap(self):
        with self.assertRaises(ConvergenceError):
            jacobi_eigh(np.array([[2.0, 1.0], [1.0, 2.0]]), max_sweeps=0)

    def test_off_norm_keeps_tiny_couplings(self):
        a = np.diag([1.0, 2.0, 3.0])
        a[0, 2] = a[2, 0] = 1e-9
        self.assertAlmostEqual(_off_norm(a), np.sqrt(2) * 1e-9, delta=1e-20)

    def test_laplacian_residuals(self):
        for graph in (build_cycle(10), build_torus([3, 3]), build_cycle(20)):
            entries = laplacian(full_subset(graph)).entries
            values, vectors = jacobi_eigh(entries)
            residual = np.max(np.abs(entries @ vectors - vectors * values))
            self.assertLessEqual(residual, 1e-10, msg=str(graph))


class EigensystemTests(SimpleTestCase):
    def test_triangle_values(self):
        es = full_eigensystem(build_cycle(3))
        np.testing.assert_allclose(es.values, [0.0, 1.5, 1.5], atol=1e-12)
        self.assertTrue(es.is_singular)
        self.assertEqual(es.values[0], 0.0)

    def test_identity_values(self):
        es = eigensystem(np.eye(3))
        np.testing.assert_allclose(es.values, [1.0, 1.0, 1.0])
        self.assertFalse(es.is_singular)

    def test_four_cycle_values(self):
        es = full_eigensystem(build_cycle(4))
        np.testing.assert_allclose(es.values, [0.0, 1.0, 1.0, 2.0], atol=1e-12)

    def test_gram_and_trace(self):
        for graph in (build_cycle(9), build_torus([3, 4])):
            es = full_eigensystem(graph)
            self.assertLess(es.gram_residual(), 1e-12)
            self.assertAlmostEqual(float(es.values.sum()), graph.vertex_count, places=10)
            self.assertTrue(np.all(np.diff(es.values) >= 0))

    @override_settings(GREENS_EIGENSOLVER="lapack")
    def test_lapack_switch(self):
        es = full_eigensystem(build_cycle(6))
        np.testing.assert_allclose(es.values, [0, 0.5, 0.5, 1.5, 1.5, 2.0], atol=1e-12)

    def test_rejects_asymmetric(self):
        with self.assertRaises(ShapeError):
            eigensystem(np.array([[1.0, 0.5], [0.0, 1.0]]))


class PseudoInverseTests(SimpleTestCase):
    def test_triangle_entries(self):
        table = greens_pseudo(full_eigensystem(build_cycle(3)))
        np.testing.assert_allclose(np.diag(table.entries), 4 / 9, atol=1e-12)
        self.assertAlmostEqual(table[0, 1], -2 / 9, places=12)
        self.assertTrue(table.is_pseudo)

    def test_four_cycle_entries(self):
        table = greens_pseudo(full_eigensystem(build_cycle(4)))
        self.assertAlmostEqual(table[0, 0], 0.625, places=12)
        self.assertAlmostEqual(table[0, 1], -0.125, places=12)
        self.assertAlmostEqual(table[0, 2], -0.375, places=12)

    def test_defining_relations(self):
        for graph in (build_cycle(7), build_torus([3, 5])):
            subset = full_subset(graph)
            lap = laplacian(subset).entries
            table = greens_pseudo(eigensystem(laplacian(subset))).entries
            n = graph.vertex_count
            projector = np.full((n, n), 1.0 / n)
            np.testing.assert_allclose(table @ lap, np.eye(n) - projector, atol=1e-10)
            np.testing.assert_allclose(lap @ table, np.eye(n) - projector, atol=1e-10)
            np.testing.assert_allclose(table.sum(axis=1), 0.0, atol=1e-10)

    def test_dirichlet_eigensystem_is_misuse(self):
        es = eigensystem(laplacian(dirichlet_subset(build_cycle(4), [0, 1])))
        with self.assertRaises(MisuseError):
            greens_pseudo(es)


class DirichletInverseTests(SimpleTestCase):
    def test_single_vertex(self):
        table = greens_dirichlet(laplacian(dirichlet_subset(build_cycle(3), [0])))
        np.testing.assert_allclose(table.entries, [[1.0]])

    def test_pair_in_triangle(self):
        table = greens_dirichlet(dirichlet_subset(build_cycle(3), [0, 1]))
        np.testing.assert_allclose(table.entries, [[4 / 3, 2 / 3], [2 / 3, 4 / 3]], atol=1e-12)

    def test_full_graph_is_singular(self):
        with self.assertRaises(SingularityError):
            greens_dirichlet(laplacian(full_subset(build_cycle(3))))


class AlphaOracleTests(SimpleTestCase):
    def test_four_cycle(self):
        table = greens_alpha_oracle(full_eigensystem(build_cycle(4)), 1.0)
        self.assertAlmostEqual(table[0, 0], 1 / 3, places=12)
        self.assertAlmostEqual(table[0, 1], -1 / 12, places=12)

    def test_triangle(self):
        table = greens_alpha_oracle(full_eigensystem(build_cycle(3)), 1.5)
        self.assertAlmostEqual(table[0, 0], 2 / 9, places=12)

    def test_zero_shift_is_pseudo_inverse(self):
        es = full_eigensystem(build_cycle(5))
        np.testing.assert_allclose(
            greens_alpha_oracle(es, 0.0).entries, greens_pseudo(es).entries, atol=1e-12
        )

    def test_shifted_relation_and_monotone_diagonal(self):
        subset = full_subset(build_cycle(6))
        lap = laplacian(subset).entries
        es = eigensystem(laplacian(subset))
        low, high = greens_alpha_oracle(es, 0.3), greens_alpha_oracle(es, 0.9)
        projector = np.full((6, 6), 1 / 6)
        np.testing.assert_allclose((lap + 0.3 * np.eye(6)) @ low.entries, np.eye(6) - projector, atol=1e-10)
        self.assertTrue(np.all(np.diag(low.entries) > np.diag(high.entries)))

    def test_pole(self):
        es = eigensystem(laplacian(dirichlet_subset(build_cycle(3), [0])))
        with self.assertRaises(PoleError):
            greens_alpha_oracle(es, -1.0)


class TransientSeriesTests(SimpleTestCase):
    def test_pair_in_triangle(self):
        p = transition_matrix(dirichlet_subset(build_cycle(3), [0, 1]))
        np.testing.assert_allclose(p.entries, [[0.0, 0.5], [0.5, 0.0]])
        table = transient_series(p, tol=1e-13)
        np.testing.assert_allclose(table.entries, [[4 / 3, 2 / 3], [2 / 3, 4 / 3]], atol=1e-12)

    def test_single_vertex(self):
        table = transient_series(transition_matrix(dirichlet_subset(build_cycle(4), [0])))
        np.testing.assert_allclose(table.entries, [[1.0]])

    def test_matches_dirichlet_inverse(self):
        subset = dirichlet_subset(build_cycle(8), [1, 2, 3, 4, 5])
        tol = 1e-12
        series = transient_series(transition_matrix(subset), tol=tol).entries
        direct = greens_dirichlet(subset).entries
        np.testing.assert_allclose(series, direct, atol=10 * tol)

    def test_full_graph_diverges(self):
        with self.assertRaises(DivergenceError):
            transient_series(transition_matrix(full_subset(build_cycle(3))))


class FundamentalMatrixTests(SimpleTestCase):
    def test_triangle(self):
        z = fundamental_matrix(build_cycle(3))
        self.assertAlmostEqual(z[0, 0], 4 / 9, places=12)
        self.assertAlmostEqual(z[0, 1], -2 / 9, places=12)

    def test_equals_pseudo_inverse_on_regular_graphs(self):
        for graph in (build_cycle(4), build_cycle(7), build_torus([3, 4])):
            z = fundamental_matrix(graph)
            n = graph.vertex_count
            p = transition_matrix(full_subset(graph)).entries
            np.testing.assert_allclose(z, greens_pseudo(full_eigensystem(graph)).entries, atol=1e-10)
            np.testing.assert_allclose((np.eye(n) - p) @ z, np.eye(n) - 1.0 / n, atol=1e-10)
            np.testing.assert_allclose(z.sum(axis=1), 0.0, atol=1e-10)


class TransitionTests(SimpleTestCase):
    def test_four_cycle_rows(self):
        p = transition_matrix(full_subset(build_cycle(4)))
        self.assertFalse(p.absorbing)
        np.testing.assert_array_equal((p.entries == 0.5).sum(axis=1), 2)
        np.testing.assert_allclose(p.entries.sum(axis=1), 1.0)

    def test_large_torus_stationary_is_uniform(self):
        pi = stationary(build_torus([49, 49]))
        np.testing.assert_allclose(pi, 1 / 2401)
        self.assertAlmostEqual(float(pi.sum()), 1.0, places=12)


class TorusSpectralEntryTests(SimpleTestCase):
    def test_matches_dense_pseudo_inverse(self):
        graph = build_torus([3, 4])
        table = greens_pseudo(full_eigensystem(graph)).entries
        for y in range(graph.vertex_count):
            displacement = graph.coordinates(y)
            self.assertAlmostEqual(torus_spectral_entry((3, 4), displacement), table[0, y], places=10)

    def test_displacement_length_checked(self):
        with self.assertRaises(ShapeError):
            torus_spectral_entry((3, 4), (1,))
