"""Complex linear-algebra kernels: matrix permanent and unitarity checks."""

import numpy as np
import numpy.typing as npt

from .errors import DimensionError

MAX_PERMANENT_DIM = 16
UNITARITY_TOLERANCE = 1e-12

ComplexMatrix = npt.NDArray[np.complex128]


def as_complex_matrix(m: npt.ArrayLike) -> ComplexMatrix:
    """
    Coerce ``m`` into a two-dimensional complex128 array.

    Raises:
        DimensionError: if ``m`` is not two-dimensional
    """
    matrix = np.asarray(m, dtype=np.complex128)
    if matrix.ndim != 2:
        raise DimensionError(f"Expected a 2-D matrix, got shape {matrix.shape}")
    return matrix


def permanent(m: npt.ArrayLike) -> complex:
    """
    Compute the permanent of a square matrix.

    Uses Ryser's inclusion-exclusion formula visited in Gray-code order, so
    consecutive column subsets differ by one column and every step costs O(n).

    Args:
        m: Square matrix of dimension at most ``MAX_PERMANENT_DIM``

    Returns:
        The permanent as a Python complex; the empty matrix has permanent 1

    Raises:
        DimensionError: if ``m`` is not square or is too large
    """
    matrix = np.asarray(m, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Permanent needs a square matrix, got {matrix.shape}")

    n = matrix.shape[0]
    if n == 0:
        return 1 + 0j
    if n > MAX_PERMANENT_DIM:
        raise DimensionError(
            f"Permanent dimension {n} exceeds the supported maximum {MAX_PERMANENT_DIM}"
        )
    if n == 1:
        return complex(matrix[0, 0])

    # row_sums[i] holds the sum of row i over the current column subset
    row_sums = np.zeros(n, dtype=np.complex128)
    total = 0j
    gray = 0
    sign = 1
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        column = (gray ^ new_gray).bit_length() - 1
        if new_gray & (1 << column):
            row_sums += matrix[:, column]
        else:
            row_sums -= matrix[:, column]
        gray = new_gray
        sign = -sign
        total += sign * np.prod(row_sums)

    return complex(total if n % 2 == 0 else -total)


def unitarity_deviation(m: npt.ArrayLike) -> float:
    """Return max |(M^dagger M - I)_ij| for a square matrix."""
    matrix = as_complex_matrix(m)
    if matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Unitarity needs a square matrix, got {matrix.shape}")
    gram = matrix.conj().T @ matrix
    return float(np.max(np.abs(gram - np.eye(matrix.shape[0]))))


def is_unitary(m: npt.ArrayLike, atol: float = UNITARITY_TOLERANCE) -> bool:
    """Check ||M^dagger M - I||_max < atol."""
    return unitarity_deviation(m) < atol


def max_singular_value(m: npt.ArrayLike) -> float:
    """Largest singular value of ``m`` (0 for an empty matrix)."""
    matrix = as_complex_matrix(m)
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.svd(matrix, compute_uv=False)[0])
