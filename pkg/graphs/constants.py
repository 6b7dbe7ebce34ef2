from django.db import models


class LaplacianKind(models.TextChoices):
    COMBINATORIAL = "combinatorial", "Combinatorial L = D - A"
    NORMALIZED = "normalized", "Normalized D^-1/2 L D^-1/2"
    DISCRETE_LAPLACE = "discrete_laplace", "Discrete Laplace I - P"


MIN_CYCLE_LENGTH = 3
