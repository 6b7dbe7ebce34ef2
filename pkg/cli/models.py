from django.db import models


class VerificationRun(models.Model):
    """
    One `verify --record` invocation: the suite that ran and its RunReport totals.
    """

    class Suite(models.TextChoices):
        ALL = "all", "All suites"
        CYCLE = "cycle", "Cycle closed form"
        GALPHA = "galpha", "Generalized cycle Green's function"
        TORUS = "torus", "Two-dimensional torus"
        TTORUS = "ttorus", "t-dimensional torus"
        PRODUCT = "product", "Product formulas"
        WALK = "walk", "Hitting times"
        IDENTITIES = "identities", "Fourier identities"
        RELATIONS = "relations", "Defining relations"

    suite = models.CharField(max_length=20, choices=Suite.choices)
    attempted = models.PositiveIntegerField(default=0)
    passed = models.PositiveIntegerField(default=0)
    max_residual = models.FloatField(default=0.0)
    max_size = models.PositiveIntegerField(null=True, blank=True)
    tolerance = models.FloatField(null=True, blank=True, help_text="Override passed with --tol, if any")
    wall_seconds = models.FloatField(default=0.0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created_at"]

    @property
    def succeeded(self):
        return self.attempted == self.passed

    def __str__(self):
        return f"{self.suite}: {self.passed}/{self.attempted} (max residual {self.max_residual:.2e})"


class BenchmarkRecord(models.Model):

    class Mode(models.TextChoices):
        ROW = "row", "Representative row"
        FULL_REP = "full-rep", "Full row without reflection reuse"

    dims = models.CharField(max_length=100, help_text="Comma separated cycle lengths")
    mode = models.CharField(max_length=10, choices=Mode.choices, default=Mode.ROW)
    n = models.PositiveIntegerField()
    t = models.PositiveSmallIntegerField()
    entries_computed = models.PositiveIntegerField()
    nanos_total = models.BigIntegerField()
    nanos_per_entry = models.FloatField()
    oracle_nanos_per_entry = models.FloatField(null=True, blank=True)
    threads = models.PositiveSmallIntegerField(default=1)
    repeat = models.PositiveSmallIntegerField(default=1)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        return f"torus {self.dims} [{self.mode}]: {self.nanos_per_entry:.0f} ns/entry"
