import numpy as np
from django.test import SimpleTestCase

from closed_forms.services import cycle_green_table
from closed_forms.tori import torus_green_table
from core.exceptions import MisuseError, ShapeError
from graphs.services import build_cycle, build_torus, dirichlet_subset, full_subset, laplacian
from spectral.services import eigensystem, greens_dirichlet, greens_pseudo
from .services import hitting_from_fundamental, hitting_grid, hitting_oracle, hitting_time


def dense_green(graph):
    es = eigensystem(laplacian(full_subset(graph)))
    return greens_pseudo(es)


class HittingOracleTests(SimpleTestCase):
    def test_five_cycle_column(self):
        np.testing.assert_allclose(hitting_oracle(build_cycle(5), 0), [0, 4, 6, 6, 4], atol=1e-10)

    def test_triangle(self):
        self.assertAlmostEqual(hitting_oracle(build_cycle(3), 0)[1], 2.0, places=12)


class HittingTimeTests(SimpleTestCase):
    def test_same_vertex_is_zero(self):
        graph = build_cycle(7)
        green = dense_green(graph)
        for x in range(7):
            self.assertEqual(hitting_time(graph, green, x, x), 0.0)

    def test_five_cycle_distance_two(self):
        graph = build_cycle(5)
        self.assertAlmostEqual(hitting_time(graph, cycle_green_table(5), 0, 2), 6.0, places=10)

    def test_matches_first_step_oracle(self):
        graphs = [build_cycle(m) for m in range(3, 13)]
        graphs += [build_torus([m, n]) for m, n in ((3, 3), (3, 5), (4, 6), (6, 6))]
        for graph in graphs:
            green = dense_green(graph)
            for y in range(graph.vertex_count):
                column = hitting_oracle(graph, y)
                for x in range(graph.vertex_count):
                    if x == y:
                        continue
                    q = hitting_time(graph, green, x, y)
                    self.assertLessEqual(abs(q - column[x]), 1e-7 * column[x], msg=f"{graph} {x}->{y}")

    def test_cycle_law(self):
        for m in range(3, 51):
            graph, green = build_cycle(m), cycle_green_table(m)
            for a in range(m):
                self.assertAlmostEqual(hitting_time(graph, green, 0, a), a * (m - a), delta=1e-8)

    def test_dirichlet_table_rejected(self):
        graph = build_cycle(4)
        table = greens_dirichlet(laplacian(dirichlet_subset(graph, [0, 1])))
        with self.assertRaises(MisuseError):
            hitting_time(graph, table, 0, 1)

    def test_fundamental_matrix_path(self):
        cases = (
            (build_cycle(7), cycle_green_table(7)),
            (build_torus([3, 4]), torus_green_table([3, 4])),
        )
        for graph, green in cases:
            for x, y in ((0, 1), (2, 5), (6, 3)):
                expected = hitting_oracle(graph, y)[x]
                self.assertAlmostEqual(hitting_from_fundamental(graph, x, y), expected, places=8)
                self.assertAlmostEqual(hitting_time(graph, green, x, y), expected, places=8)


class HittingGridTests(SimpleTestCase):
    def test_small_grid_against_oracle(self):
        graph = build_torus([3, 3])
        grid = hitting_grid([3, 3], (0, 0))
        column_by_target = {y: hitting_oracle(graph, y)[0] for y in range(9)}
        for x, y, q in grid.rows():
            self.assertAlmostEqual(q, column_by_target[graph.vertex_at((x, y))], places=7)

    def test_source_and_reflections(self):
        grid = hitting_grid([5, 6], (0, 0))
        self.assertEqual(grid.entries[0, 0], 0.0)
        m, n = grid.dims
        for x in range(m):
            for y in range(n):
                self.assertAlmostEqual(grid.entries[x, y], grid.entries[(m - x) % m, y], places=9)
                self.assertAlmostEqual(grid.entries[x, y], grid.entries[x, (n - y) % n], places=9)

    def test_shifted_source(self):
        base, shifted = hitting_grid([5, 6]), hitting_grid([5, 6], (2, 3))
        self.assertEqual(shifted.entries[2, 3], 0.0)
        self.assertAlmostEqual(shifted.entries[4, 4], base.entries[2, 1], places=10)

    def test_only_two_dimensional(self):
        with self.assertRaises(ShapeError):
            hitting_grid([3, 3, 3])

    def test_forty_nine_squared(self):
        grid = hitting_grid([49, 49])
        self.assertAlmostEqual(grid.maximum, 6946.8637, delta=1e-3)
        self.assertEqual(grid.argmax, (24, 24))

        axis = grid.entries[0, :25]
        self.assertTrue(np.all(np.diff(axis) >= 0))

        graph = build_torus([49, 49])
        target = graph.vertex_at((17, 30))
        expected = hitting_oracle(graph, target)[0]
        self.assertLessEqual(abs(grid.entries[17, 30] - expected), 1e-6 * expected)

        peak = hitting_oracle(graph, graph.vertex_at((24, 24)))[0]
        self.assertLessEqual(abs(grid.maximum - peak), 1e-6 * peak)
