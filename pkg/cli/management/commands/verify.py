from django.core.management.base import BaseCommand, CommandError

from cli.models import VerificationRun
from cli.utils import FAILURE, command_errors
from cli.verification import SUITES, run_suite


class Command(BaseCommand):
    help = "Runs the closed-form verification suites against their brute-force oracles."

    def add_arguments(self, parser):
        parser.add_argument("--suite", default="all", choices=["all", *SUITES])
        parser.add_argument("--max-size", type=int, help="Largest cycle length / factor dimension to include")
        parser.add_argument("--tol", type=float, help="Override every check's tolerance")
        parser.add_argument("--record", action="store_true", help="Save the run to the history table")

    def handle(self, *args, **options):
        suite = options["suite"]
        self.stdout.write(f"Running suite '{suite}'...")

        with command_errors():
            report = run_suite(suite, max_size=options["max_size"], tol=options["tol"], on_check=self._print_check)

        summary = (
            f"{report.passed}/{report.attempted} checks passed, "
            f"max residual {report.max_residual:.3e}, {report.wall_seconds:.2f}s"
        )

        if options["record"]:
            VerificationRun.objects.create(
                suite=suite,
                attempted=report.attempted,
                passed=report.passed,
                max_residual=report.max_residual,
                max_size=options["max_size"],
                tolerance=options["tol"],
                wall_seconds=report.wall_seconds,
            )

        if not report.succeeded:
            self.stdout.write(self.style.ERROR(summary))
            raise CommandError(f"Suite '{suite}' failed.", returncode=FAILURE)
        self.stdout.write(self.style.SUCCESS(summary))

    def _print_check(self, check):
        if check.passed:
            status = self.style.SUCCESS("PASS")
        else:
            status = self.style.ERROR("FAIL")
        self.stdout.write(f"{status} {check.name} residual={check.residual:.3e} tol={check.tol:.1e}")
