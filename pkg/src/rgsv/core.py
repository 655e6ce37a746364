"""Dense matrix primitives used by every other module.

Matrices are plain numpy arrays, real (float64) or complex (complex128).
``as_matrix`` is the single validation gate: 2-D, nonempty, all entries
finite. Factorizations are LAPACK-backed (Householder QR, dense SVD) with
a fixed phase convention so that factors are deterministic and usable in
golden tests.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DimensionError, RankDeficiencyError, ValidationError

REAL = "real"
COMPLEX = "complex"

_SEED_MASK = (1 << 64) - 1


class QrFactors(NamedTuple):
    """Reduced QR factors: ``q`` has orthonormal columns, ``r`` is upper
    triangular with nonnegative real diagonal, and ``q @ r`` reconstructs
    the input."""

    q: np.ndarray
    r: np.ndarray


class SvdFactors(NamedTuple):
    """Reduced SVD factors: ``u @ diag(s) @ v.conj().T`` reconstructs the
    input, with ``s`` real, nonnegative and nonincreasing."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as a nonempty 2-D matrix of finite entries and return
    it as float64 or complex128."""
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must have positive dimensions, got {arr.shape}")
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128, copy=False)
    else:
        arr = arr.astype(np.float64, copy=False)
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def gaussian_matrix(rows: int, cols: int, seed: int, field: str = REAL) -> np.ndarray:
    """Sample a ``rows x cols`` Gaussian matrix, bitwise reproducible for a
    fixed ``(rows, cols, seed, field)``.

    Real entries are standard normal; complex entries have independent
    real and imaginary parts of variance 1/2 each (unit total variance).
    """
    if rows < 1 or cols < 1:
        raise DimensionError(f"matrix dimensions must be positive, got ({rows}, {cols})")
    rng = np.random.default_rng(int(seed) & _SEED_MASK)
    if field == REAL:
        return rng.standard_normal((rows, cols))
    if field == COMPLEX:
        re = rng.standard_normal((rows, cols))
        im = rng.standard_normal((rows, cols))
        return math.sqrt(0.5) * (re + 1j * im)
    raise ValidationError(f"field must be 'real' or 'complex', got {field!r}")


def reduced_qr(m) -> QrFactors:
    """Reduced (economy) QR via Householder reflections.

    The phase convention makes the diagonal of R real and nonnegative,
    which fixes the factors uniquely for full-column-rank input. Rank
    deficiency is permitted; trailing diagonal entries of R may be ~0.
    """
    a = as_matrix(m)
    q, r = np.linalg.qr(a, mode="reduced")
    d = np.diagonal(r)
    if np.iscomplexobj(r):
        absd = np.abs(d)
        ph = np.where(absd > 0, d / np.where(absd > 0, absd, 1.0), 1.0)
    else:
        ph = np.where(d < 0.0, -1.0, 1.0)
    q = q * ph
    r = r * np.conj(ph)[:, None]
    return QrFactors(q, r)


def svd(m) -> SvdFactors:
    """Reduced SVD. Raises ConvergenceError if the LAPACK kernel fails."""
    a = as_matrix(m)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    return SvdFactors(u, s, vh.conj().T)


def _squared_entries(a: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(a):
        return np.square(a.real) + np.square(a.imag)
    return np.square(a)


def sum_sq(a: np.ndarray) -> float:
    """Compensated sum of squared entry magnitudes.

    Column sums use numpy's pairwise summation; the per-column partials are
    combined exactly with math.fsum, so repeated accumulation of many small
    blocks does not drift.
    """
    if a.size == 0:
        return 0.0
    per_col = _squared_entries(a).sum(axis=0)
    return float(math.fsum(np.atleast_1d(per_col)))


def frobenius_norm(m) -> float:
    """Frobenius norm, sqrt of the compensated sum of squared magnitudes."""
    return math.sqrt(sum_sq(as_matrix(m)))


def pseudoinverse_norm(m) -> float:
    """Spectral norm of the pseudoinverse, 1/sigma_min, for a matrix of
    full column rank. Raises RankDeficiencyError otherwise."""
    a = as_matrix(m)
    rows, cols = a.shape
    if rows < cols:
        raise RankDeficiencyError(
            f"matrix of shape {a.shape} cannot have full column rank"
        )
    s = svd(a).s
    smax, smin = float(s[0]), float(s[-1])
    if smin <= 1e-13 * smax:
        raise RankDeficiencyError(
            f"smallest singular value {smin:.3e} below rank threshold "
            f"{1e-13 * smax:.3e}"
        )
    return 1.0 / smin
