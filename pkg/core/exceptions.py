from django.core.exceptions import ValidationError


class GreensValidationError(ValidationError):
    """
    Base class for rejected inputs. Each subclass carries a stable code so
    callers (and the CLI exit-code mapping) can tell the cases apart.
    """
    default_code = "invalid"

    def __init__(self, message, code=None, params=None):
        super().__init__(message, code=code or self.default_code, params=params)


class InvalidSizeError(GreensValidationError):
    default_code = "invalid_size"


class IndexRangeError(GreensValidationError):
    default_code = "index_range"


class DomainError(GreensValidationError):
    default_code = "domain"


class BranchError(GreensValidationError):
    default_code = "out_of_branch"


class ShapeError(GreensValidationError):
    default_code = "shape"


class StructureError(GreensValidationError):
    default_code = "structure"


class NumericError(ArithmeticError):
    pass


class ConvergenceError(NumericError):
    pass


class SingularityError(NumericError):
    pass


class PoleError(NumericError):
    pass


class DivergenceError(NumericError):
    pass


class StructuralError(NumericError):
    pass


class ImaginaryResidueError(NumericError):
    pass


class MisuseError(ValueError):
    """Raised when a table or factor is passed to an operation built for another kind."""
