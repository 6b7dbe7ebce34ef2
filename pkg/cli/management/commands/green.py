import logging

from django.conf import settings
from django.core.management.base import BaseCommand

from closed_forms.services import cycle_green, cycle_green_alpha
from closed_forms.structures import CycleDistance, TorusSpec
from closed_forms.tori import all_displacements, canonical_displacements, torus_green
from cli.benchmarks import evaluate_row
from cli.utils import command_errors, require
from cli.writers import emit, render_csv
from core.exceptions import DomainError, IndexRangeError, ShapeError
from core.utils import parse_int_list

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Writes one row of a closed-form Green's function as CSV (cycle, torus, ttorus or galpha)."

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=["cycle", "torus", "ttorus", "galpha"])
        parser.add_argument("--m", type=int, help="Cycle length (cycle, galpha)")
        parser.add_argument("--dims", help="Comma separated cycle lengths (torus, ttorus)")
        parser.add_argument("--alpha", type=float, help="Shift α > 0 (galpha)")
        parser.add_argument("--source", help="Source vertex coordinates, default origin")
        parser.add_argument("--out", help="Output path, default stdout")
        parser.add_argument("--digits", type=int, default=settings.GREENS_CSV_DIGITS)
        parser.add_argument("--threads", type=int, default=settings.GREENS_THREADS)

    def handle(self, *args, **options):
        kind = options["kind"]
        digits = options["digits"]

        with command_errors():
            if not 1 <= digits <= 17:
                raise DomainError(f"--digits must be between 1 and 17, got {digits}.")

            if kind in ("cycle", "galpha"):
                header, rows = self._cycle_rows(kind, options)
            elif kind == "torus":
                header, rows = self._torus_rows(options)
            else:
                header, rows = self._ttorus_rows(options)

        emit(self, render_csv(header, rows, digits), options.get("out"))
        logger.info(f"green {kind}: wrote {len(rows)} rows")

    def _source(self, options, t):
        if options.get("source") is None:
            return (0,) * t
        source = parse_int_list(options["source"], label="source")
        if len(source) != t:
            raise ShapeError(f"--source needs {t} coordinates, got {len(source)}.")
        return source

    def _cycle_rows(self, kind, options):
        m = require(options, "m")
        (x,) = self._source(options, 1)
        CycleDistance(m=m, a=0)
        if not 0 <= x < m:
            raise IndexRangeError(f"Source {x} is not a vertex of C{m}.")

        if kind == "cycle":
            return ["a", "value"], [(y, cycle_green(m, abs(y - x))) for y in range(m)]

        alpha = require(options, "alpha")
        if alpha <= 0:
            raise DomainError(f"--alpha must be positive, got {alpha}.")
        return ["a", "value"], [(y, cycle_green_alpha(m, alpha, abs(y - x))) for y in range(m)]

    def _torus_rows(self, options):
        spec = TorusSpec(parse_int_list(require(options, "dims")))
        if spec.t != 2:
            raise ShapeError(f"torus takes exactly two dims, got {spec.dims}; use ttorus.")
        m, n = spec.dims
        sx, sy = self._source(options, 2)
        if not (0 <= sx < m and 0 <= sy < n):
            raise IndexRangeError(f"Source {(sx, sy)} is not a vertex of torus {spec.dims}.")

        rows = [
            (x, y, torus_green(m, n, abs(x - sx), abs(y - sy)))
            for x in range(m)
            for y in range(n)
        ]
        return ["dx", "dy", "value"], rows

    def _ttorus_rows(self, options):
        spec = TorusSpec(parse_int_list(require(options, "dims")))
        source = self._source(options, spec.t)
        if any(not 0 <= c < m for c, m in zip(source, spec.dims)):
            raise IndexRangeError(f"Source {source} is not a vertex of torus {spec.dims}.")

        targets = all_displacements(spec)
        displacements = canonical_displacements(spec.dims, source, targets)
        values = evaluate_row(spec, displacements, options["threads"])
        header = [f"d{s + 1}" for s in range(spec.t)] + ["value"]
        return header, [(*target, value) for target, value in zip(targets, values)]
