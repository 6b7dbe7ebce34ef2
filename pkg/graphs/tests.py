import numpy as np
from django.test import SimpleTestCase

from core.exceptions import IndexRangeError, InvalidSizeError, StructureError
from .constants import LaplacianKind
from .services import (
    build_cycle,
    build_torus,
    cartesian_product,
    dirichlet_subset,
    full_subset,
    laplacian,
    regular_graph,
)


class CycleConstructionTests(SimpleTestCase):
    def test_triangle_is_complete(self):
        c3 = build_cycle(3)
        self.assertEqual(c3.degree, 2)
        self.assertEqual(c3.coordinate_shape, (3,))
        for x in range(3):
            for y in range(3):
                self.assertEqual(c3.is_adjacent(x, y), x != y)

    def test_four_cycle_adjacency(self):
        c4 = build_cycle(4)
        for x, y in [(0, 1), (1, 2), (2, 3), (3, 0)]:
            self.assertTrue(c4.is_adjacent(x, y))
        self.assertFalse(c4.is_adjacent(0, 2))
        self.assertEqual(c4.neighbors(0), (1, 3))

    def test_two_cycle_rejected(self):
        with self.assertRaises(InvalidSizeError):
            build_cycle(2)

    def test_irregular_and_disconnected_graphs_rejected(self):
        path = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        with self.assertRaises(StructureError):
            regular_graph(path)
        two_edges = np.kron(np.eye(2), np.array([[0, 1], [1, 0]]))
        with self.assertRaises(StructureError):
            regular_graph(two_edges)


class CartesianProductTests(SimpleTestCase):
    def test_degree_and_size_add_up(self):
        self.assertEqual(cartesian_product(build_cycle(3), build_cycle(3)).degree, 4)
        c3c4 = cartesian_product(build_cycle(3), build_cycle(4))
        self.assertEqual((c3c4.vertex_count, c3c4.degree), (12, 4))

    def test_three_fold_product_shape(self):
        c3 = build_cycle(3)
        g = cartesian_product(cartesian_product(c3, c3), c3)
        self.assertEqual((g.vertex_count, g.degree), (27, 6))
        self.assertEqual(g.coordinate_shape, (3, 3, 3))
        self.assertEqual(build_torus([3, 3, 3]).coordinate_shape, (3, 3, 3))

    def test_row_major_indexing_first_factor_slowest(self):
        g = cartesian_product(build_cycle(3), build_cycle(4))
        self.assertEqual(g.vertex_at((1, 2)), 6)
        self.assertEqual(g.coordinates(6), (1, 2))
        self.assertTrue(g.is_adjacent(g.vertex_at((1, 2)), g.vertex_at((1, 3))))
        self.assertTrue(g.is_adjacent(g.vertex_at((1, 2)), g.vertex_at((2, 2))))
        self.assertFalse(g.is_adjacent(g.vertex_at((1, 2)), g.vertex_at((2, 3))))

    def test_product_commutes_up_to_index_transposition(self):
        g, h = build_cycle(3), build_cycle(5)
        gh, hg = cartesian_product(g, h), cartesian_product(h, g)
        perm = np.arange(15).reshape(3, 5).T.ravel()
        np.testing.assert_array_equal(gh.adjacency[np.ix_(perm, perm)], hg.adjacency)


class DirichletSubsetTests(SimpleTestCase):
    def test_subset_validation(self):
        c4 = build_cycle(4)
        with self.assertRaises(StructureError):
            dirichlet_subset(c4, [0, 2])
        with self.assertRaises(StructureError):
            dirichlet_subset(c4, [0, 1, 1])
        with self.assertRaises(IndexRangeError):
            dirichlet_subset(c4, [0, 7])
        self.assertTrue(dirichlet_subset(c4, [0, 1]).is_proper)
        self.assertFalse(full_subset(c4).is_proper)


class LaplacianTests(SimpleTestCase):
    def test_normalized_triangle(self):
        entries = laplacian(full_subset(build_cycle(3))).entries
        np.testing.assert_allclose(np.diag(entries), 1.0)
        np.testing.assert_allclose(entries[~np.eye(3, dtype=bool)], -0.5)

    def test_dirichlet_pair_keeps_host_degree(self):
        entries = laplacian(dirichlet_subset(build_cycle(3), [0, 1])).entries
        np.testing.assert_allclose(entries, [[1.0, -0.5], [-0.5, 1.0]])

    def test_combinatorial_four_cycle(self):
        entries = laplacian(full_subset(build_cycle(4)), LaplacianKind.COMBINATORIAL).entries
        expected = np.array([
            [2, -1, 0, -1],
            [-1, 2, -1, 0],
            [0, -1, 2, -1],
            [-1, 0, -1, 2],
        ], dtype=float)
        np.testing.assert_array_equal(entries, expected)

    def test_kind_relations_and_row_sums(self):
        for graph in (build_cycle(5), build_torus([3, 4]), build_torus([3, 3, 3])):
            subset = full_subset(graph)
            comb = laplacian(subset, LaplacianKind.COMBINATORIAL).entries
            norm = laplacian(subset, LaplacianKind.NORMALIZED).entries
            delta = laplacian(subset, LaplacianKind.DISCRETE_LAPLACE).entries
            d = subset.degrees

            np.testing.assert_array_equal(comb.sum(axis=1), 0.0)
            np.testing.assert_allclose(delta.sum(axis=1), 0.0, atol=1e-15)
            np.testing.assert_allclose(norm, comb / np.sqrt(np.outer(d, d)), atol=1e-15)
            np.testing.assert_allclose(comb, d[:, None] * delta, atol=1e-15)
            np.testing.assert_array_equal(norm, norm.T)
