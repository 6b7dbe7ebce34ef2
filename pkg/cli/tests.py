import json
import math
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from closed_forms.services import cycle_green
from closed_forms.tori import torus3_green
from core.exceptions import DomainError, MisuseError, PoleError
from graphs.services import build_torus
from walks.services import hitting_oracle
from .benchmarks import bench_torus, check_scaling
from .models import BenchmarkRecord, VerificationRun
from .utils import FAILURE, USAGE_ERROR, command_errors
from .verification import Check, RunReport, check_plateau, run_suite
from .writers import format_value, render_csv


def run(*args, **kwargs):
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO(), **kwargs)
    return out.getvalue()


def parse_csv(text):
    lines = text.splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:] if not line.startswith("#")]
    comments = [line for line in lines if line.startswith("#")]
    return header, rows, comments


class WriterTests(SimpleTestCase):
    def test_significant_digits(self):
        self.assertEqual(format_value(4 / 9, 4), "0.4444")
        self.assertEqual(format_value(-0.0, 15), "0")

    def test_render_csv(self):
        text = render_csv(["a", "value"], [(0, 0.5), (1, -0.25)], 3, comments=["max=0.5"])
        self.assertEqual(text, "a,value\n0,0.5\n1,-0.25\n# max=0.5\n")


class CommandErrorMappingTests(SimpleTestCase):
    def test_validation_is_usage_error(self):
        with self.assertRaises(CommandError) as ctx, command_errors():
            raise DomainError("bad alpha")
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)

    def test_misuse_is_usage_error(self):
        with self.assertRaises(CommandError) as ctx, command_errors():
            raise MisuseError("wrong table")
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)

    def test_numeric_is_failure(self):
        with self.assertRaises(CommandError) as ctx, command_errors():
            raise PoleError("pole")
        self.assertEqual(ctx.exception.returncode, FAILURE)


class GreenCommandTests(SimpleTestCase):
    def test_cycle_three(self):
        header, rows, _ = parse_csv(run("green", "cycle", m=3))
        self.assertEqual(header, ["a", "value"])
        self.assertEqual([int(r[0]) for r in rows], [0, 1, 2])
        values = [float(r[1]) for r in rows]
        self.assertAlmostEqual(values[0], 4 / 9, places=13)
        self.assertAlmostEqual(values[1], -2 / 9, places=13)
        self.assertAlmostEqual(values[2], -2 / 9, places=13)

    def test_digits(self):
        _, rows, _ = parse_csv(run("green", "cycle", m=3, digits=4))
        self.assertEqual(rows[0][1], "0.4444")

    def test_galpha_four(self):
        _, rows, _ = parse_csv(run("green", "galpha", m=4, alpha=1.0))
        values = [float(r[1]) for r in rows]
        self.assertEqual(len(values), 4)
        self.assertAlmostEqual(values[0], 1 / 3, places=12)
        self.assertAlmostEqual(values[1], -1 / 12, places=12)
        self.assertAlmostEqual(values[3], -1 / 12, places=12)

    def test_torus_three_by_three(self):
        header, rows, _ = parse_csv(run("green", "torus", dims="3,3"))
        self.assertEqual(header, ["dx", "dy", "value"])
        self.assertEqual(len(rows), 9)
        self.assertEqual(rows[0][:2], ["0", "0"])
        self.assertAlmostEqual(float(rows[0][2]), 8 / 9, places=12)

    def test_ttorus_three_dimensional(self):
        header, rows, _ = parse_csv(run("green", "ttorus", dims="3,3,3"))
        self.assertEqual(header, ["d1", "d2", "d3", "value"])
        self.assertEqual(len(rows), 27)
        for row in rows:
            displacement = tuple(int(c) for c in row[:3])
            self.assertAlmostEqual(float(row[3]), torus3_green(3, displacement), delta=1e-10)

    def test_ttorus_threads_keep_row_order(self):
        _, single, _ = parse_csv(run("green", "ttorus", dims="4,4,4", threads=1))
        _, threaded, _ = parse_csv(run("green", "ttorus", dims="4,4,4", threads=3))
        self.assertEqual([r[:3] for r in single], [r[:3] for r in threaded])
        for a, b in zip(single, threaded):
            self.assertAlmostEqual(float(a[3]), float(b[3]), delta=1e-13)

    def test_source_lists_targets(self):
        _, rows, _ = parse_csv(run("green", "cycle", m=5, source="2"))
        values = {int(r[0]): float(r[1]) for r in rows}
        self.assertAlmostEqual(values[2], cycle_green(5, 0), places=13)
        self.assertAlmostEqual(values[0], cycle_green(5, 2), places=13)
        self.assertAlmostEqual(values[4], cycle_green(5, 2), places=13)

    def test_output_is_deterministic(self):
        self.assertEqual(run("green", "torus", dims="4,5"), run("green", "torus", dims="4,5"))

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "cycle.csv")
            self.assertEqual(run("green", "cycle", m=3, out=path), "")
            with open(path, encoding="utf-8", newline="") as handle:
                text = handle.read()
        self.assertTrue(text.startswith("a,value\n0,"))
        self.assertNotIn("\r", text)

    def test_usage_errors(self):
        cases = [
            (("green", "torus"), {"dims": "3,x"}),
            (("green", "torus"), {"dims": "2,3"}),
            (("green", "torus"), {"dims": "3,3,3"}),
            (("green", "cycle"), {}),
            (("green", "cycle"), {"m": 4, "source": "4"}),
            (("green", "galpha"), {"m": 4, "alpha": -1.0}),
            (("green", "galpha"), {"m": 4, "alpha": 0.0}),
            (("green", "cycle"), {"m": 3, "digits": 0}),
        ]
        for args, kwargs in cases:
            with self.subTest(args=args, kwargs=kwargs):
                with self.assertRaises(CommandError) as ctx:
                    run(*args, **kwargs)
                self.assertEqual(ctx.exception.returncode, USAGE_ERROR)


class HittingCommandTests(SimpleTestCase):
    def test_three_by_three_matches_oracle(self):
        header, rows, comments = parse_csv(run("hitting", dims="3,3"))
        self.assertEqual(header, ["x", "y", "Q"])
        self.assertEqual(len(rows), 9)
        graph = build_torus([3, 3])
        expected = hitting_oracle(graph, 0)
        for x, y, q in rows:
            # Q(origin -> v) equals Q(v -> origin) on a vertex-transitive graph
            oracle = expected[graph.vertex_at((int(x), int(y)))]
            self.assertLessEqual(abs(float(q) - oracle), 1e-7 * max(oracle, 1.0))
        self.assertEqual(len(comments), 1)
        self.assertTrue(comments[0].startswith("# max="))

    def test_source_is_zero(self):
        _, rows, _ = parse_csv(run("hitting", dims="5,5", source="0,0"))
        self.assertEqual(rows[0], ["0", "0", "0"])
        self.assertEqual(len(rows), 25)

    def test_shifted_source(self):
        _, rows, _ = parse_csv(run("hitting", dims="5,5", source="2,3"))
        values = {(int(x), int(y)): float(q) for x, y, q in rows}
        self.assertEqual(values[(2, 3)], 0.0)
        self.assertAlmostEqual(values[(3, 3)], values[(1, 3)], places=9)

    def test_summary_names_argmax(self):
        _, rows, comments = parse_csv(run("hitting", dims="5,7"))
        best = max(rows, key=lambda r: float(r[2]))
        self.assertIn(" at ", comments[0])
        maximum = float(comments[0].split("=")[1].split(" ")[0])
        self.assertTrue(math.isclose(maximum, float(best[2]), rel_tol=1e-12))

    def test_usage_errors(self):
        for kwargs in ({"dims": "4"}, {"dims": "4,4", "source": "9,0"}, {"dims": "4,4,4"}):
            with self.subTest(kwargs=kwargs):
                with self.assertRaises(CommandError) as ctx:
                    run("hitting", **kwargs)
                self.assertEqual(ctx.exception.returncode, USAGE_ERROR)


class VerificationReportTests(SimpleTestCase):
    def test_nan_residual_fails(self):
        self.assertFalse(Check("nan", float("nan"), 1.0).passed)

    def test_report_totals(self):
        report = RunReport("cycle", [Check("a", 1e-12, 1e-9), Check("b", 1e-3, 1e-9)])
        self.assertEqual((report.attempted, report.passed), (2, 1))
        self.assertEqual(report.max_residual, 1e-3)
        self.assertFalse(report.succeeded)

    def test_zero_tolerance_is_an_override(self):
        with self.assertLogs("cli.verification", "INFO"):
            report = run_suite("cycle", max_size=4, tol=0.0)
        self.assertTrue(report.checks)
        self.assertTrue(all(check.tol == 0.0 for check in report.checks))

    def test_plateau_window_only_warns(self):
        with self.assertLogs("cli.verification", "WARNING"):
            self.assertFalse(check_plateau(6946.86))
        self.assertTrue(check_plateau(6000.0))


class VerifyCommandTests(TestCase):
    def test_cycle_suite(self):
        output = run("verify", suite="cycle", max_size=30)
        self.assertIn("PASS", output)
        self.assertNotIn("FAIL", output)
        self.assertIn("checks passed", output)

    def test_identities_suite(self):
        output = run("verify", suite="identities", max_size=6)
        self.assertNotIn("FAIL", output)

    def test_product_suite(self):
        output = run("verify", suite="product", max_size=4)
        self.assertNotIn("FAIL", output)

    def test_relations_suite(self):
        output = run("verify", suite="relations", max_size=9)
        self.assertNotIn("FAIL", output)

    def test_record(self):
        run("verify", suite="galpha", max_size=6, record=True)
        saved = VerificationRun.objects.get()
        self.assertEqual(saved.suite, VerificationRun.Suite.GALPHA)
        self.assertEqual(saved.max_size, 6)
        self.assertEqual(saved.attempted, 4)
        self.assertTrue(saved.succeeded)

    def test_failure_exit_code(self):
        with self.assertLogs("cli.verification", "ERROR"):
            with self.assertRaises(CommandError) as ctx:
                run("verify", suite="cycle", max_size=8, tol=1e-300, record=True)
        self.assertEqual(ctx.exception.returncode, FAILURE)
        self.assertFalse(VerificationRun.objects.get().succeeded)

    def test_unknown_suite(self):
        with self.assertRaises(CommandError):
            run("verify", "--suite=everything")


class BenchCommandTests(TestCase):
    def records(self, output):
        return [json.loads(line) for line in output.splitlines()]

    def test_representative_row(self):
        (record,) = self.records(run("bench", dims=["5,6"], repeat=1))
        self.assertEqual(record["dims"], [5, 6])
        self.assertEqual((record["n"], record["t"]), (30, 2))
        self.assertEqual(record["entries_computed"], 3 * 4)
        self.assertGreater(record["nanos_per_entry"], 0)

    def test_full_rep(self):
        (record,) = self.records(run("bench", dims=["4,4,4"], mode="full-rep", repeat=1))
        self.assertEqual(record["entries_computed"], 64)
        self.assertEqual(record["mode"], "full-rep")

    def test_compare_oracle(self):
        (record,) = self.records(run("bench", dims=["6,6,6"], repeat=1, compare_oracle=True))
        self.assertIn("oracle_nanos_per_entry", record)
        self.assertGreater(record["speedup"], 0)

    def test_record(self):
        run("bench", dims=["5,5", "7,7"], repeat=1, record=True)
        self.assertEqual(BenchmarkRecord.objects.count(), 2)
        self.assertEqual(set(BenchmarkRecord.objects.values_list("dims", flat=True)), {"5,5", "7,7"})

    def test_missing_dims(self):
        with self.assertRaises(CommandError) as ctx:
            run("bench")
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)

    def test_small_dimension(self):
        with self.assertRaises(CommandError) as ctx:
            run("bench", dims=["2,5"])
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)


class ScalingCheckTests(SimpleTestCase):
    def record(self, m, nanos_per_entry):
        return {"dims": [m, m], "n": m * m, "t": 2, "nanos_per_entry": nanos_per_entry}

    def test_warns_when_growth_exceeds_model(self):
        records = [self.record(10, 100.0), self.record(20, 1000.0)]
        with self.assertLogs("cli.benchmarks", "WARNING"):
            exceeded = check_scaling(records, slack=1.4)
        self.assertEqual(exceeded, [records[1]])

    def test_within_model(self):
        records = [self.record(10, 100.0), self.record(20, 200.0)]
        self.assertEqual(check_scaling(records, slack=1.4), [])

    def test_different_dimension_counts_skipped(self):
        records = [self.record(10, 1.0), {"dims": [5, 5, 5], "n": 125, "t": 3, "nanos_per_entry": 1e6}]
        self.assertEqual(check_scaling(records), [])

    def test_default_slack_keeps_ratio_three_for_doubled_sides(self):
        base = {"dims": [100, 100], "n": 10000, "t": 2, "nanos_per_entry": 100.0}
        within = {"dims": [200, 200], "n": 40000, "t": 2, "nanos_per_entry": 290.0}
        beyond = {"dims": [200, 200], "n": 40000, "t": 2, "nanos_per_entry": 305.0}
        self.assertEqual(check_scaling([base, within]), [])
        with self.assertLogs("cli.benchmarks", "WARNING"):
            self.assertEqual(check_scaling([base, beyond]), [beyond])


class TorusTimingTests(SimpleTestCase):
    def test_hundred_squared_row(self):
        record = bench_torus((100, 100), repeat=1)
        self.assertEqual(record["entries_computed"], 51 * 51)
        self.assertLess(record["nanos_total"], 30e9)

    def test_three_torus_beats_fourier_sum(self):
        record = bench_torus((20, 20, 20), repeat=3, compare_oracle=True)
        self.assertEqual(record["n"], 8000)
        self.assertGreaterEqual(record["speedup"], 10.0)
