import numpy as np

from core.exceptions import ImaginaryResidueError, ShapeError


def parse_int_list(raw, label="dims"):
    """
    Parses a comma separated list like "49,49" into a tuple of ints.
    Raises ShapeError on empty or non-integer items.
    """
    if raw is None or not str(raw).strip():
        raise ShapeError(f"--{label} is required.")

    values = []
    for part in str(raw).split(","):
        part = part.strip()
        try:
            values.append(int(part))
        except ValueError:
            raise ShapeError(f"Malformed --{label} entry '{part}' in '{raw}'.")
    return tuple(values)


def max_abs(matrix):
    return float(np.max(np.abs(matrix))) if np.size(matrix) else 0.0


def symmetry_residual(matrix):
    return max_abs(matrix - matrix.T.conj())


def discard_imaginary(values, tol, what="value"):
    """Returns the real part after asserting the imaginary residue is at most tol."""
    values = np.asarray(values)
    if not np.iscomplexobj(values):
        return values
    residue = max_abs(values.imag)
    if residue > tol:
        raise ImaginaryResidueError(f"Imaginary residue {residue:.3e} in {what} exceeds {tol:.1e}.")
    return values.real.copy()
