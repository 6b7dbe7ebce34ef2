from django.conf import settings
from django.core.management.base import BaseCommand

from cli.benchmarks import bench_torus, check_scaling
from cli.models import BenchmarkRecord
from cli.utils import command_errors, require
from cli.writers import emit, render_jsonl
from closed_forms.structures import TorusSpec
from core.exceptions import DomainError
from core.utils import parse_int_list


class Command(BaseCommand):
    help = "Times torus Green's function rows and prints one JSON record per --dims."

    def add_arguments(self, parser):
        parser.add_argument("--dims", action="append", help="Comma separated cycle lengths; repeatable")
        parser.add_argument("--mode", default="row", choices=BenchmarkRecord.Mode.values)
        parser.add_argument("--repeat", type=int, default=3)
        parser.add_argument("--threads", type=int, default=settings.GREENS_THREADS)
        parser.add_argument("--compare-oracle", action="store_true", help="Also time the Fourier-sum oracle per entry")
        parser.add_argument("--record", action="store_true", help="Save every record to the history table")
        parser.add_argument("--out", help="Output path, default stdout")

    def handle(self, *args, **options):
        with command_errors():
            specs = [TorusSpec(parse_int_list(raw)) for raw in require(options, "dims")]
            if options["repeat"] < 1 or options["threads"] < 1:
                raise DomainError("--repeat and --threads must be at least 1.")

            records = [
                bench_torus(
                    spec,
                    mode=options["mode"],
                    repeat=options["repeat"],
                    threads=options["threads"],
                    compare_oracle=options["compare_oracle"],
                )
                for spec in specs
            ]

        for record in check_scaling(records):
            self.stderr.write(self.style.WARNING(f"Per-entry time for {record['dims']} grew faster than expected"))

        if options["record"]:
            BenchmarkRecord.objects.bulk_create(
                BenchmarkRecord(
                    dims=",".join(str(m) for m in record["dims"]),
                    mode=record["mode"],
                    n=record["n"],
                    t=record["t"],
                    entries_computed=record["entries_computed"],
                    nanos_total=record["nanos_total"],
                    nanos_per_entry=record["nanos_per_entry"],
                    oracle_nanos_per_entry=record.get("oracle_nanos_per_entry"),
                    threads=options["threads"],
                    repeat=options["repeat"],
                )
                for record in records
            )

        emit(self, render_jsonl(records), options.get("out"))
