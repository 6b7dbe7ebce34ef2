from django.conf import settings
from django.core.management.base import BaseCommand

from cli.utils import command_errors, require
from cli.writers import emit, render_csv
from core.exceptions import DomainError, ShapeError
from core.utils import parse_int_list
from walks.services import hitting_grid


class Command(BaseCommand):
    help = "Writes expected hitting times Q(source, (x, y)) over a 2-D torus as CSV."

    def add_arguments(self, parser):
        parser.add_argument("--dims", help="M,N")
        parser.add_argument("--source", default="0,0", help="x0,y0 (default 0,0)")
        parser.add_argument("--out", help="Output path, default stdout")
        parser.add_argument("--digits", type=int, default=settings.GREENS_CSV_DIGITS)

    def handle(self, *args, **options):
        digits = options["digits"]

        with command_errors():
            if not 1 <= digits <= 17:
                raise DomainError(f"--digits must be between 1 and 17, got {digits}.")
            dims = parse_int_list(require(options, "dims"))
            if len(dims) != 2:
                raise ShapeError(f"--dims takes two cycle lengths, got {len(dims)}.")
            source = parse_int_list(options["source"], label="source")
            table = hitting_grid(dims, source)

        mx, my = table.argmax
        summary = f"max={table.maximum:.{digits}g} at {mx},{my}"
        emit(self, render_csv(["x", "y", "Q"], table.rows(), digits, comments=[summary]), options.get("out"))

        if options.get("out"):
            self.stdout.write(self.style.SUCCESS(f"Wrote {len(table.entries.flat)} rows to {options['out']} ({summary})"))
