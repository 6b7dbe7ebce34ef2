from contextlib import contextmanager

from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from core.exceptions import MisuseError, NumericError

USAGE_ERROR = 2
FAILURE = 1


@contextmanager
def command_errors():
    """Maps library errors onto the command exit codes."""
    try:
        yield
    except ValidationError as exc:
        raise CommandError(" ".join(exc.messages), returncode=USAGE_ERROR)
    except MisuseError as exc:
        raise CommandError(str(exc), returncode=USAGE_ERROR)
    except NumericError as exc:
        raise CommandError(f"{type(exc).__name__}: {exc}", returncode=FAILURE)


def require(options, name):
    if options.get(name) is None:
        raise CommandError(f"--{name.replace('_', '-')} is required.", returncode=USAGE_ERROR)
    return options[name]
