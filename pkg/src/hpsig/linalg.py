"""Dense spectral primitives.

All operators in this package are finite dimensional and are represented as
complex numpy arrays. Residual checks compare a norm against
``tol * max(1, scale)`` where ``scale`` is the norm of the data entering the
identity, so that tolerances behave uniformly across magnitudes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NotSelfAdjoint, ShapeMismatch

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "SpectralSplit",
    "adjoint",
    "as_complex_matrix",
    "assemble_total",
    "is_invertible",
    "min_singular_value",
    "operator_norm",
    "spectral_split",
    "within",
]


def as_complex_matrix(m, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce ``m`` to a 2d complex array, optionally enforcing its shape."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 0 and (rows == 0 or cols == 0):
        a = np.zeros((rows or 0, cols or 0), dtype=np.complex128)
    if a.ndim == 1:
        # A length-0 vector is accepted for empty blocks only.
        if a.size == 0 and (rows in (0, None) or cols in (0, None)):
            a = a.reshape((rows or 0, cols or 0))
        else:
            raise ShapeMismatch(f"expected a matrix, got array of shape {a.shape}")
    if a.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got array of shape {a.shape}")
    if rows is not None and a.shape[0] != rows:
        raise ShapeMismatch(f"expected {rows} rows, got {a.shape[0]}")
    if cols is not None and a.shape[1] != cols:
        raise ShapeMismatch(f"expected {cols} columns, got {a.shape[1]}")
    if a.size and not np.all(np.isfinite(a)):
        raise ShapeMismatch("matrix contains non-finite entries")
    return a


def adjoint(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def operator_norm(m: np.ndarray) -> float:
    """Largest singular value; 0 for empty matrices."""
    a = np.asarray(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def min_singular_value(m: np.ndarray) -> float:
    """Smallest singular value; +inf for 0x0, 0 for non-square empty shapes."""
    a = np.asarray(m)
    if a.shape[0] != a.shape[1]:
        if a.shape[0] == 0 or a.shape[1] == 0:
            return 0.0
        s = np.linalg.svd(a, compute_uv=False)
        return float(s[-1]) if min(a.shape) else 0.0
    if a.shape[0] == 0:
        return float("inf")
    s = np.linalg.svd(a, compute_uv=False)
    return float(s[-1])


def is_invertible(m: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Return (flag, smallest singular value); flag is true iff it exceeds tol.

    Empty square matrices are invertible (identity of the zero space).
    """
    sv = min_singular_value(m)
    return sv > tol, sv


def within(residual: float, tol: float, scale: float = 1.0) -> bool:
    """Residual acceptance rule used across the package."""
    return residual <= tol * max(1.0, scale)


@dataclass(frozen=True)
class SpectralSplit:
    """Signed spectral decomposition of a self-adjoint operator.

    ``p_plus``/``p_minus``/``p_zero`` are orthogonal projections onto the
    strictly positive, strictly negative and (numerically) zero eigenspaces.
    Eigenvalues with ``|lam| <= tol * max(1, norm)`` land in the zero class.
    """

    p_plus: np.ndarray
    p_minus: np.ndarray
    p_zero: np.ndarray
    rank_plus: int
    rank_minus: int
    rank_zero: int
    min_abs_nonzero_eigenvalue: float
    eigenvalues: np.ndarray


def spectral_split(h: np.ndarray, tol: float = DEFAULT_TOL) -> SpectralSplit:
    """Split a self-adjoint matrix into positive/negative/zero spectral parts."""
    a = as_complex_matrix(h)
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"spectral_split needs a square matrix, got {a.shape}")
    scale = operator_norm(a)
    herm = operator_norm(a - adjoint(a))
    if not within(herm, tol, scale):
        raise NotSelfAdjoint(
            f"operator is not self-adjoint: |h - h*| = {herm:.3e} exceeds tol"
        )
    if a.shape[0] == 0:
        empty = np.zeros((0, 0), dtype=np.complex128)
        return SpectralSplit(empty, empty, empty, 0, 0, 0, float("inf"), np.zeros(0))
    w, v = np.linalg.eigh((a + adjoint(a)) / 2.0)
    thresh = tol * max(1.0, scale)
    plus = w > thresh
    minus = w < -thresh
    zero = ~(plus | minus)

    def proj(mask: np.ndarray) -> np.ndarray:
        vecs = v[:, mask]
        return vecs @ adjoint(vecs)

    nonzero = np.abs(w[plus | minus])
    return SpectralSplit(
        p_plus=proj(plus),
        p_minus=proj(minus),
        p_zero=proj(zero),
        rank_plus=int(np.count_nonzero(plus)),
        rank_minus=int(np.count_nonzero(minus)),
        rank_zero=int(np.count_nonzero(zero)),
        min_abs_nonzero_eigenvalue=float(nonzero.min()) if nonzero.size else float("inf"),
        eigenvalues=w,
    )


def assemble_total(
    row_dims: Sequence[int],
    col_dims: Sequence[int],
    entries: Iterable[tuple[int, int, np.ndarray]],
) -> np.ndarray:
    """Assemble a block matrix from (row-degree, col-degree, block) entries.

    Blocks at the same position accumulate additively.
    """
    row_off = np.concatenate(([0], np.cumsum(row_dims))).astype(int)
    col_off = np.concatenate(([0], np.cumsum(col_dims))).astype(int)
    total = np.zeros((int(row_off[-1]), int(col_off[-1])), dtype=np.complex128)
    for r, c, block in entries:
        b = np.asarray(block, dtype=np.complex128)
        if b.shape != (row_dims[r], col_dims[c]):
            raise ShapeMismatch(
                f"block at ({r}, {c}) has shape {b.shape}, "
                f"expected {(row_dims[r], col_dims[c])}"
            )
        total[row_off[r]:row_off[r + 1], col_off[c]:col_off[c + 1]] += b
    return total
